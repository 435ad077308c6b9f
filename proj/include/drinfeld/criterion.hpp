#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "drinfeld/drinfeld.hpp"
#include "drinfeld/errors.hpp"
#include "drinfeld/field.hpp"
#include "drinfeld/poly.hpp"

namespace drinfeld {

/// Witness tuple for the congruence criterion: distinct nonzero anchors
/// a1, a2 and a non-square eta.
struct WitnessTuple {
    FqElem a1, a2, eta;

    friend bool operator==(const WitnessTuple&, const WitnessTuple&) = default;
};

/// The five congruence conditions, individually reported:
///   (1) (T - a1) | g1
///   (2) gcd(g1, T(T - a2)) = 1
///   (3) (T - a2) | g2 exactly once
///   (4) g2 = -a1 eta^{-1} mod (T - a1)
///   (5) gcd(g2, T) = 1
struct CriterionReport {
    WitnessTuple tuple;
    bool c1_div = false;
    bool c2_coprime = false;
    bool c3_exact_div = false;
    bool c4_congruence = false;
    bool c5_coprime_T = false;
    bool pass = false;
};

namespace detail {
inline void validate_tuple(const Field& f, const WitnessTuple& t) {
    if (!f.q_odd() || f.q() < 5)
        raise_domain("SmallOrEvenQ", "the criterion requires odd q >= 5");
    if (f.is_zero(t.a1) || f.is_zero(t.a2))
        raise_domain("ZeroAnchor", "a1 and a2 must be nonzero");
    if (t.a1 == t.a2) raise_domain("EqualAnchors", "a1 and a2 must be distinct");
    if (is_square(f, t.eta)) raise_domain("EtaIsSquare", "eta must be a non-square");
}
}  // namespace detail

/// Evaluates the five conditions for a fixed tuple. Divisibility by the
/// linear primes reduces to evaluation; the exact-order condition peels one
/// factor of (T - a2) off g2.
inline CriterionReport check_conditions(const Datum& w, const WitnessTuple& t) {
    const Field& f = *w.field;
    detail::validate_tuple(f, t);
    CriterionReport r;
    r.tuple = t;
    r.c1_div = f.is_zero(poly_eval(f, w.g1, t.a1));
    r.c2_coprime = !f.is_zero(poly_eval(f, w.g1, f.zero())) &&
                   !f.is_zero(poly_eval(f, w.g1, t.a2));
    if (f.is_zero(poly_eval(f, w.g2, t.a2))) {
        APoly lin = poly_from(f, {f.neg(t.a2), f.one()});
        APoly quot = poly_divrem(f, w.g2, lin).first;
        r.c3_exact_div = !f.is_zero(poly_eval(f, quot, t.a2));
    }
    FqElem target = f.mul(f.neg(t.a1), f.inv(t.eta));
    r.c4_congruence = poly_eval(f, w.g2, t.a1) == target;
    r.c5_coprime_T = !f.is_zero(poly_eval(f, w.g2, f.zero()));
    r.pass = r.c1_div && r.c2_coprime && r.c3_exact_div && r.c4_congruence && r.c5_coprime_T;
    return r;
}

/// Iterates all admissible tuples in enumeration order (a1, then a2, then
/// eta) and returns the report of the first passing one.
inline std::optional<CriterionReport> find_witness(const Datum& w) {
    const Field& f = *w.field;
    if (!f.q_odd() || f.q() < 5)
        raise_domain("SmallOrEvenQ", "the criterion requires odd q >= 5");
    for (std::uint64_t a1 = 1; a1 < f.q(); ++a1)
        for (std::uint64_t a2 = 1; a2 < f.q(); ++a2) {
            if (a2 == a1) continue;
            for (std::uint64_t e = 1; e < f.q(); ++e) {
                if (is_square(f, {e})) continue;
                CriterionReport r = check_conditions(w, {{a1}, {a2}, {e}});
                if (r.pass) return r;
            }
        }
    return std::nullopt;
}

/// Sufficient-only verdict: a witness proves surjectivity of the T-adic
/// representation; absence of one proves nothing.
struct SurjectivityVerdict {
    bool proved_surjective = false;
    std::optional<CriterionReport> witness;
};

inline SurjectivityVerdict surjectivity_verdict(const Datum& w) {
    auto r = find_witness(w);
    if (r) return {true, std::move(r)};
    return {false, std::nullopt};
}

}  // namespace drinfeld
