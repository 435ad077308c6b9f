#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "drinfeld/errors.hpp"
#include "drinfeld/ext_field.hpp"
#include "drinfeld/field.hpp"
#include "drinfeld/poly.hpp"
#include "drinfeld/twisted.hpp"

namespace drinfeld {

/// Drinfeld datum w = (g1, g2) with g2 != 0, defining the rank-2 module
/// phi_T = T + g1 tau + g2 tau^2 over A = F_q[T].
struct Datum {
    const Field* field = nullptr;
    APoly g1;
    APoly g2;
};

inline Datum make_datum(const Field& f, APoly g1, APoly g2) {
    if (g2.is_zero()) raise_domain("ZeroG2", "rank-2 datum requires g2 != 0");
    return {&f, std::move(g1), std::move(g2)};
}

/// The homomorphism a -> phi_a over a coefficient domain D, with memoized
/// powers of phi_T. The domain and the coefficient images are fixed at
/// construction; phi() is safe to call concurrently.
template <TwistedCoefficientDomain D>
class DrinfeldModule {
  public:
    DrinfeldModule(const D& dom, typename D::Elem gamma_t, typename D::Elem g1,
                   typename D::Elem g2)
        : dom_(&dom) {
        phi_t_ = tw_from(dom, {std::move(gamma_t), std::move(g1), std::move(g2)});
        powers_.push_back(tw_monomial(dom, dom.one(), 0));
    }

    const D& domain() const { return *dom_; }
    const TwistedPoly<D>& phi_T() const { return phi_t_; }

    /// phi_a = sum c_i (phi_T)^i for a = sum c_i T^i; F_q-linear extension.
    TwistedPoly<D> phi(const APoly& a) const {
        std::lock_guard<std::mutex> lock(mu_);
        while (powers_.size() < std::max<std::size_t>(a.c.size(), 1))
            powers_.push_back(tw_mul(powers_.back(), phi_t_));
        TwistedPoly<D> acc = tw_from(*dom_, {});
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i] == FqElem{}) continue;
            acc = tw_add(acc, tw_scale(*dom_, dom_->from_scalar(a.c[i]), powers_[i]));
        }
        return acc;
    }

  private:
    const D* dom_;
    TwistedPoly<D> phi_t_;
    mutable std::mutex mu_;
    mutable std::vector<TwistedPoly<D>> powers_;
};

/// phi_a over A itself (gamma = inclusion, so gamma(T) = T).
inline TwistedPoly<ADomain> phi_of(const ADomain& dom, const Datum& w, const APoly& a) {
    const Field& f = dom.field();
    DrinfeldModule<ADomain> m(dom, poly_monomial(f, f.one(), 1), w.g1, w.g2);
    return m.phi(a);
}

/// The reduction of w at a prime: the residue field k_lambda together with
/// the module over it. Reduces coefficient-wise; gamma(T) = T mod lambda.
struct ReducedModule {
    ExtField residue;
    typename ExtField::Elem g1bar, g2bar;

    DrinfeldModule<ExtField> module() const {
        return DrinfeldModule<ExtField>(residue, residue.gen(), g1bar, g2bar);
    }
};

inline ReducedModule reduce_datum(const Datum& w, const PrimeIdeal& lambda) {
    ExtField k(*w.field, lambda.generator, /*trusted=*/true);
    auto g1b = k.reduce(w.g1);
    auto g2b = k.reduce(w.g2);
    return {std::move(k), std::move(g1b), std::move(g2b)};
}

// ---------------------------------------------------------------------------
// Isomorphism data
// ---------------------------------------------------------------------------

/// Reduced fraction with monic denominator.
struct APolyFraction {
    APoly num;
    APoly den;
};

inline APoly poly_pow(const Field& f, APoly base, std::uint64_t e) {
    APoly r = poly_one(f);
    while (e) {
        if (e & 1) r = poly_mul(f, r, base);
        base = poly_mul(f, base, base);
        e >>= 1;
    }
    return r;
}

/// j(phi) = g1^{q+1} / g2 in lowest terms.
inline APolyFraction j_invariant(const Datum& w) {
    const Field& f = *w.field;
    APoly num = poly_pow(f, w.g1, f.q() + 1);
    APoly den = w.g2;
    APoly g = poly_gcd(f, num, den);
    if (!g.is_zero() && g.c.size() > 1) {
        num = poly_divrem(f, num, g).first;
        den = poly_divrem(f, den, g).first;
    }
    FqElem lead_inv = f.inv(den.c.back());
    return {poly_scale(f, lead_inv, num), poly_scale(f, lead_inv, den)};
}

/// lambda-adic valuation of a reduced fraction; the numerator must be
/// nonzero. Used to record v(j) at the witness primes.
inline long fraction_valuation(const Field& f, const APolyFraction& fr, const PrimeIdeal& lambda) {
    if (fr.num.is_zero()) raise_domain("ZeroElement", "valuation of the zero fraction");
    long vn = static_cast<long>(poly_valuation(f, fr.num, lambda.generator));
    long vd = static_cast<long>(poly_valuation(f, fr.den, lambda.generator));
    return vn - vd;
}

/// The isomorphic datum (c^{q-1} g1, c^{q^2-1} g2).
inline Datum twist(const Datum& w, FqElem c) {
    const Field& f = *w.field;
    if (f.is_zero(c)) raise_domain("ZeroTwist", "twist by zero is not an isomorphism");
    std::uint64_t q = f.q();
    return {w.field, poly_scale(f, f.pow(c, q - 1), w.g1),
            poly_scale(f, f.pow(c, q * q - 1), w.g2)};
}

/// Minimality: no monic irreducible f with f^{q-1} | g1 and f^{q^2-1} | g2.
/// Irreducible candidates suffice, and their degree is bounded by the
/// divisibility constraints, so the candidate set is finite.
inline bool is_minimal(const Datum& w) {
    const Field& f = *w.field;
    const std::uint64_t q = f.q();
    std::size_t bound;
    if (!w.g1.is_zero()) {
        std::size_t b1 = (w.g1.c.size() - 1) / (q - 1);
        std::size_t b2 = (w.g2.c.size() - 1) / (q * q - 1);
        bound = std::min(b1, b2);
    } else {
        bound = (w.g2.c.size() - 1) / (q * q - 1);
    }
    for (std::size_t d = 1; d <= bound; ++d) {
        for (const auto& p : list_primes(f, d)) {
            bool div1 = w.g1.is_zero() ||
                        poly_valuation(f, w.g1, p.generator) >= q - 1;
            if (!div1) continue;
            if (poly_valuation(f, w.g2, p.generator) >= q * q - 1) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Reduction classification
// ---------------------------------------------------------------------------

enum class ReductionKind { good, stable_rank1, unstable };

struct ReductionInfo {
    PrimeIdeal prime;
    ReductionKind kind;
    std::optional<int> height;  // present iff kind == good
};

/// Classifies the reduction of a *minimal* datum at lambda. For good primes
/// the height is computed from the definition: H = ht_tau(phibar_a) / deg
/// lambda for the monic generator a, not from the lambda | g1 shortcut.
inline ReductionInfo reduce_at(const Datum& w, const PrimeIdeal& lambda) {
    const Field& f = *w.field;
    if (!is_minimal(w))
        raise_domain("NonMinimalDatum",
                     "reduction classification by divisibility needs a minimal datum");
    bool div1 = w.g1.is_zero() || poly_divides(f, lambda.generator, w.g1);
    bool div2 = poly_divides(f, lambda.generator, w.g2);
    if (!div2) {
        ReducedModule red = reduce_datum(w, lambda);
        auto mod = red.module();
        auto phibar = mod.phi(lambda.generator);
        auto [ht, deg] = ht_deg(red.residue, phibar);
        (void)deg;
        if (ht % lambda.degree != 0)
            raise_internal("HeightNotIntegral", "ht_tau not a multiple of deg lambda");
        int H = static_cast<int>(ht / lambda.degree);
        if (H < 1 || H > 2) raise_internal("HeightOutOfRange", "H must lie in {1, 2}");
        return {lambda, ReductionKind::good, H};
    }
    if (div1) return {lambda, ReductionKind::unstable, std::nullopt};
    return {lambda, ReductionKind::stable_rank1, std::nullopt};
}

}  // namespace drinfeld
