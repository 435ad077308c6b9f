#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <vector>

#include "drinfeld/errors.hpp"

namespace drinfeld {

/// Element of F_q, stored as its rank in the canonical enumeration order.
///
/// An element with power-basis coordinates (c_0, ..., c_{n-1}) over F_p
/// (c_0 the constant coordinate) has rank c_0*p^{n-1} + c_1*p^{n-2} + ... +
/// c_{n-1}, so integer order on `v` coincides with lexicographic order on
/// little-endian coordinate sequences. All arithmetic goes through `Field`.
struct FqElem {
    std::uint64_t v = 0;

    friend bool operator==(FqElem a, FqElem b) = default;
    friend auto operator<=>(FqElem a, FqElem b) = default;
};

namespace detail {

// Dense little-endian polynomials over F_p with word coefficients; only used
// to validate/construct field moduli. Everything over F_q lives in poly.hpp.

using FpPoly = std::vector<std::uint64_t>;

inline void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    fp_trim(c);
    return c;
}

inline std::uint64_t fp_inv_scalar(std::uint64_t a, std::uint64_t p) {
    // Fermat; p is prime and a != 0.
    std::uint64_t r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

inline FpPoly fp_mod(FpPoly a, const FpPoly& m, std::uint64_t p) {
    fp_trim(a);
    const std::uint64_t lead_inv = fp_inv_scalar(m.back(), p);
    while (a.size() >= m.size()) {
        std::uint64_t c = a.back() * lead_inv % p;
        std::size_t k = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i) {
            std::uint64_t t = c * m[i] % p;
            a[i + k] = (a[i + k] + p - t) % p;
        }
        fp_trim(a);
    }
    return a;
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        FpPoly r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// x^{p^i} mod m for i = 1..n/2 and gcd tests; standard irreducibility check.
inline bool fp_irreducible(const FpPoly& m, std::uint64_t p) {
    const std::size_t n = m.size() - 1;
    if (n == 0) return false;
    if (n == 1) return true;
    FpPoly xi = {0, 1};
    for (std::size_t i = 1; i <= n / 2; ++i) {
        // xi <- xi^p mod m
        FpPoly r = {1}, b = xi;
        std::uint64_t e = p;
        while (e) {
            if (e & 1) r = fp_mod(fp_mul(r, b, p), m, p);
            b = fp_mod(fp_mul(b, b, p), m, p);
            e >>= 1;
        }
        xi = r;
        FpPoly diff = xi;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        fp_trim(diff);
        if (fp_gcd(diff, m, p).size() > 1) return false;
    }
    return true;
}

inline bool is_prime_u64(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace detail

/// An explicit model of F_q = F_p[z]/(modulus), q = p^n.
///
/// Carries the validated modulus plus (for moderate q) discrete exp/log
/// tables used for O(1) multiplication and inversion. Immutable after
/// construction; safe for concurrent reads.
class Field {
  public:
    using Elem = FqElem;

    static constexpr std::uint64_t kTableLimit = 1u << 20;

    std::uint64_t p() const { return p_; }
    unsigned n() const { return n_; }
    std::uint64_t q() const { return q_; }
    bool q_odd() const { return p_ != 2; }
    /// Little-endian coefficients of the modulus over F_p, length n+1, monic.
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }

    bool same_as(const Field& other) const {
        return p_ == other.p_ && n_ == other.n_ && modulus_ == other.modulus_;
    }

    FqElem zero() const { return {}; }
    FqElem one() const { return one_; }
    bool is_zero(FqElem a) const { return a.v == 0; }
    bool eq(FqElem a, FqElem b) const { return a.v == b.v; }

    /// Element of rank `idx` in the global enumeration order; idx < q.
    FqElem element_at(std::uint64_t idx) const { return {idx}; }
    std::uint64_t index_of(FqElem a) const { return a.v; }

    /// Little-endian power-basis coordinates (c_0, ..., c_{n-1}) over F_p.
    std::vector<std::uint64_t> coords_of(FqElem a) const {
        std::vector<std::uint64_t> c(n_);
        std::uint64_t v = a.v;
        for (unsigned i = n_; i-- > 0;) {
            c[i] = v % p_;
            v /= p_;
        }
        return c;
    }

    FqElem from_coords(const std::vector<std::uint64_t>& c) const {
        std::uint64_t v = 0;
        for (unsigned i = 0; i < n_; ++i) v = v * p_ + (i < c.size() ? c[i] % p_ : 0);
        return {v};
    }

    /// Scalar embedding of an integer through F_p (coordinates (c,0,...,0)).
    FqElem from_int(std::uint64_t c) const { return {(c % p_) * scale_}; }

    FqElem add(FqElem a, FqElem b) const {
        if (n_ == 1) {
            std::uint64_t s = a.v + b.v;
            return {s >= p_ ? s - p_ : s};
        }
        std::uint64_t r = 0, x = a.v, y = b.v;
        std::uint64_t m = scale_;
        for (unsigned i = 0; i < n_; ++i) {
            std::uint64_t s = (x / m) % p_ + (y / m) % p_;
            if (s >= p_) s -= p_;
            r += s * m;
            m /= p_;
        }
        return {r};
    }

    FqElem neg(FqElem a) const {
        if (n_ == 1) return {a.v == 0 ? 0 : p_ - a.v};
        std::uint64_t r = 0, m = scale_;
        for (unsigned i = 0; i < n_; ++i) {
            std::uint64_t c = (a.v / m) % p_;
            r += (c == 0 ? 0 : p_ - c) * m;
            m /= p_;
        }
        return {r};
    }

    FqElem sub(FqElem a, FqElem b) const { return add(a, neg(b)); }

    FqElem mul(FqElem a, FqElem b) const {
        if (a.v == 0 || b.v == 0) return {};
        if (has_tables_) {
            std::uint64_t e = log_[a.v] + log_[b.v];
            if (e >= q_ - 1) e -= q_ - 1;
            return {exp_[e]};
        }
        return mul_generic(a, b);
    }

    FqElem inv(FqElem a) const {
        if (a.v == 0) raise_domain("DivisionByZero", "inverse of zero in F_q");
        if (has_tables_) {
            std::uint64_t e = log_[a.v];
            return {exp_[e == 0 ? 0 : q_ - 1 - e]};
        }
        return pow(a, q_ - 2);
    }

    FqElem pow(FqElem a, std::uint64_t e) const {
        FqElem r = one_, b = a;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    /// The q-power (Frobenius) map fixes every element of F_q.
    FqElem q_power(FqElem a) const { return a; }
    FqElem from_scalar(FqElem a) const { return a; }

    /// Schoolbook coordinate multiplication; also the independent route the
    /// table path is tested against.
    FqElem mul_generic(FqElem a, FqElem b) const {
        auto ca = coords_of(a), cb = coords_of(b);
        detail::FpPoly prod = detail::fp_mul(ca, cb, p_);
        prod = detail::fp_mod(std::move(prod), modulus_, p_);
        prod.resize(n_, 0);
        return from_coords(prod);
    }

    /// Construction goes through make_field; see below.
    Field(std::uint64_t p, unsigned n, std::vector<std::uint64_t> modulus)
        : p_(p), n_(n), modulus_(std::move(modulus)) {
        q_ = 1;
        for (unsigned i = 0; i < n_; ++i) q_ *= p_;
        scale_ = q_ / p_;
        one_ = {scale_};
        if (q_ <= kTableLimit && q_ > 2) build_tables();
    }

  private:
    void build_tables() {
        // Find a generator of F_q^* (first in enumeration order), then walk
        // its powers. Order test via the prime factors of q-1.
        std::vector<std::uint64_t> factors;
        std::uint64_t m = q_ - 1;
        for (std::uint64_t d = 2; d * d <= m; ++d)
            while (m % d == 0) {
                if (factors.empty() || factors.back() != d) factors.push_back(d);
                m /= d;
            }
        if (m > 1) factors.push_back(m);

        std::uint64_t g = 0;
        for (std::uint64_t cand = 1; cand < q_; ++cand) {
            FqElem x{cand};
            bool ok = true;
            for (std::uint64_t f : factors) {
                if (pow_generic(x, (q_ - 1) / f).v == one_.v) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                g = cand;
                break;
            }
        }
        exp_.resize(q_ - 1);
        log_.assign(q_, 0);
        FqElem x = one_;
        for (std::uint64_t k = 0; k < q_ - 1; ++k) {
            exp_[k] = x.v;
            log_[x.v] = k;
            x = mul_generic(x, {g});
        }
        has_tables_ = true;
    }

    FqElem pow_generic(FqElem a, std::uint64_t e) const {
        FqElem r = one_, b = a;
        while (e) {
            if (e & 1) r = mul_generic(r, b);
            b = mul_generic(b, b);
            e >>= 1;
        }
        return r;
    }

    std::uint64_t p_;
    unsigned n_;
    std::uint64_t q_;
    std::uint64_t scale_;  // p^{n-1}; rank weight of the constant coordinate
    FqElem one_;
    std::vector<std::uint64_t> modulus_;
    bool has_tables_ = false;
    std::vector<std::uint64_t> exp_;
    std::vector<std::uint64_t> log_;
};

namespace detail {

/// First monic irreducible of degree n over F_p in enumeration order
/// (lexicographic on little-endian coefficient tuples). This rule *is* the
/// built-in modulus table; it is deterministic and needs no stored data.
inline FpPoly default_modulus(std::uint64_t p, unsigned n) {
    std::vector<std::uint64_t> digits(n, 0);  // (a_0, ..., a_{n-1})
    for (;;) {
        FpPoly m(digits.begin(), digits.end());
        m.push_back(1);
        if (fp_irreducible(m, p)) return m;
        // lexicographic successor: last digit ticks fastest
        unsigned i = n;
        while (i-- > 0) {
            if (++digits[i] < p) break;
            digits[i] = 0;
            if (i == 0) raise_internal("NoIrreducible", "exhausted modulus search");
        }
    }
}

}  // namespace detail

/// Builds a validated F_q model. Without an explicit modulus, (p, n) must lie
/// in the built-in range p <= 13, n <= 4.
inline Field make_field(std::uint64_t p, unsigned n,
                        std::optional<std::vector<std::uint64_t>> modulus = std::nullopt) {
    if (!detail::is_prime_u64(p))
        raise_domain("NotPrime", "p = " + std::to_string(p) + " is not prime");
    if (n == 0) raise_domain("UnsupportedDegree", "n must be positive");
    if (!modulus) {
        if (p > 13 || n > 4)
            raise_domain("UnsupportedDegree",
                         "no built-in modulus for p = " + std::to_string(p) +
                             ", n = " + std::to_string(n) + "; supply one explicitly");
        modulus = detail::default_modulus(p, n);
    } else {
        auto& m = *modulus;
        for (auto& c : m) c %= p;
        if (m.size() != n + 1 || m[n] != 1)
            raise_domain("ReducibleModulus", "modulus must be monic of degree n");
        if (!detail::fp_irreducible(m, p))
            raise_domain("ReducibleModulus", "modulus is reducible over F_p");
    }
    return Field(p, n, std::move(*modulus));
}

/// Exponent test: x is a square iff x^{(q-1)/2} is 0 or 1 (odd q). In
/// characteristic 2 squaring is a bijection, so everything is a square.
inline bool is_square(const Field& f, FqElem x) {
    if (!f.q_odd()) return true;
    if (f.is_zero(x)) return true;
    return f.pow(x, (f.q() - 1) / 2) == f.one();
}

/// First non-square of F_q^* in enumeration order; exactly (q-1)/2 exist.
inline FqElem find_nonsquare(const Field& f) {
    if (!f.q_odd())
        raise_domain("EvenCharacteristic", "every element of a char-2 field is a square");
    for (std::uint64_t v = 1; v < f.q(); ++v)
        if (!is_square(f, {v})) return {v};
    raise_internal("NoNonsquare", "odd q must have a non-square");
}

}  // namespace drinfeld
