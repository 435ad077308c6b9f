#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "drinfeld/errors.hpp"
#include "drinfeld/field.hpp"
#include "drinfeld/poly.hpp"

namespace drinfeld {

/// Extension field F_{q^d} modeled as F_q[T]/(M) for a monic irreducible M of
/// degree d over F_q. Elements are reduced polynomials (APoly of degree < d).
///
/// Residue fields k_lambda use the prime generator itself as modulus, so the
/// reduction map A -> k_lambda is literally "remainder mod lambda" and the
/// class of T is the canonical generator. The q-power map x -> x^q is
/// F_q-linear and is applied through a precomputed basis table.
class ExtField {
  public:
    using Elem = APoly;

    /// `modulus` must be monic irreducible over `base`; pass `trusted` when
    /// that has already been established (e.g. a PrimeIdeal generator).
    ExtField(const Field& base, APoly modulus, bool trusted = false) : base_(&base) {
        if (modulus.is_zero() || modulus.c.size() < 2 || modulus.c.back() != base.one())
            raise_domain("ReducibleModulus", "extension modulus must be monic non-constant");
        if (!trusted && !poly_irreducible(base, modulus, base.q()))
            raise_domain("ReducibleModulus", "extension modulus is reducible over F_q");
        modulus_ = std::move(modulus);
        d_ = modulus_.c.size() - 1;
        // (T^j)^q mod M for j < d; columns of the Frobenius map.
        frob_.resize(d_);
        frob_[0] = poly_one(base);
        if (d_ > 1) {
            APoly tq = poly_pow_mod(base, poly_monomial(base, base.one(), 1), base.q(), modulus_);
            for (std::size_t j = 1; j < d_; ++j)
                frob_[j] = poly_mod(base, poly_mul(base, frob_[j - 1], tq), modulus_);
        }
    }

    const Field& base() const { return *base_; }
    std::size_t degree() const { return d_; }
    const APoly& modulus() const { return modulus_; }

    bool same_as(const ExtField& other) const {
        return base_->same_as(*other.base_) && modulus_ == other.modulus_;
    }

    Elem zero() const { return {}; }
    Elem one() const { return poly_one(*base_); }
    bool is_zero(const Elem& a) const { return a.is_zero(); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    /// Reduction of an arbitrary A-polynomial into this field.
    Elem reduce(const APoly& a) const { return poly_mod(*base_, a, modulus_); }
    /// The class of T (= the field generator for d >= 2, the root for d = 1).
    Elem gen() const { return reduce(poly_monomial(*base_, base_->one(), 1)); }

    Elem from_scalar(FqElem c) const { return poly_from(*base_, {c}); }

    Elem add(const Elem& a, const Elem& b) const { return poly_add(*base_, a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return poly_sub(*base_, a, b); }
    Elem neg(const Elem& a) const { return poly_neg(*base_, a); }
    Elem mul(const Elem& a, const Elem& b) const {
        return poly_mod(*base_, poly_mul(*base_, a, b), modulus_);
    }

    Elem inv(const Elem& a) const {
        if (a.is_zero()) raise_domain("DivisionByZero", "inverse of zero in extension field");
        auto [g, s, t] = poly_xgcd(*base_, a, modulus_);
        (void)t;
        if (g.c.size() != 1) raise_internal("ReducibleModulus", "gcd with modulus not constant");
        return poly_scale(*base_, base_->inv(g.c[0]), s);
    }

    /// x -> x^q via the precomputed basis table (F_q-linear, O(d^2)).
    Elem q_power(const Elem& a) const {
        Elem r;
        for (std::size_t j = 0; j < a.c.size(); ++j) {
            if (base_->is_zero(a.c[j])) continue;
            r = poly_add(*base_, r, poly_scale(*base_, a.c[j], frob_[j]));
        }
        return r;
    }

    /// x -> x^{q^k}.
    Elem q_power_iter(Elem a, std::size_t k) const {
        for (std::size_t i = 0; i < k; ++i) a = q_power(a);
        return a;
    }

    Elem pow(const Elem& a, std::uint64_t e) const {
        Elem r = one(), b = a;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    /// Coordinates over F_q padded to length d.
    std::vector<FqElem> coords(const Elem& a) const {
        std::vector<FqElem> v(d_, base_->zero());
        for (std::size_t i = 0; i < a.c.size(); ++i) v[i] = a.c[i];
        return v;
    }

    Elem from_coords(const std::vector<FqElem>& v) const {
        Elem r;
        r.c.assign(v.begin(), v.end());
        poly_trim(*base_, r);
        return r;
    }

    /// Enumeration order: lexicographic on the padded little-endian
    /// coordinate sequence (constant coordinate most significant).
    bool less(const Elem& a, const Elem& b) const {
        for (std::size_t i = 0; i < d_; ++i) {
            FqElem x = i < a.c.size() ? a.c[i] : base_->zero();
            FqElem y = i < b.c.size() ? b.c[i] : base_->zero();
            if (x.v != y.v) return x.v < y.v;
        }
        return false;
    }

  private:
    const Field* base_;
    APoly modulus_;
    std::size_t d_;
    std::vector<APoly> frob_;
};

/// First monic irreducible of degree d over F_q in enumeration order.
inline APoly first_irreducible(const Field& f, std::size_t d) {
    std::vector<FqElem> digits(d, f.zero());
    do {
        APoly cand;
        cand.c = digits;
        cand.c.push_back(f.one());
        if (poly_irreducible(f, cand, f.q())) return cand;
    } while (next_tuple(f, digits));
    raise_internal("NoIrreducible", "no irreducible of requested degree");
}

}  // namespace drinfeld
