#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "drinfeld/criterion.hpp"
#include "drinfeld/drinfeld.hpp"
#include "drinfeld/errors.hpp"
#include "drinfeld/field.hpp"
#include "drinfeld/poly.hpp"

namespace drinfeld {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt big_pow(BigInt base, std::uint64_t e) {
    BigInt r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

/// Height cutoff: membership in C(X) means deg g1 < c1 X and deg g2 < c2 X
/// with g2 != 0 (strict inequalities).
struct HeightParams {
    std::uint64_t c1 = 1;
    std::uint64_t c2 = 1;
    std::uint64_t X = 1;
};

inline void validate_params(const HeightParams& hp) {
    if (hp.c1 == 0 || hp.c2 == 0 || hp.X == 0)
        raise_domain("InvalidHeightParams", "c1, c2, X must be positive");
}

/// #C(X) = q^{c1 X} (q^{c2 X} - 1).
inline BigInt count_all(const Field& f, const HeightParams& hp) {
    validate_params(hp);
    return big_pow(f.q(), hp.c1 * hp.X) * (big_pow(f.q(), hp.c2 * hp.X) - 1);
}

/// Exact count of pairs in C(X) with g1 = r1 mod m1 and g2 = r2 mod m2.
/// A congruence class of modulus degree k meets the degree-< B box in
/// exactly q^{B-k} polynomials once B >= k; the g2 count drops by one when
/// the class contains the excluded zero polynomial.
inline BigInt count_congruence_class(const Field& f, const HeightParams& hp, const APoly& m1,
                                     const APoly& r1, const APoly& m2, const APoly& r2) {
    validate_params(hp);
    if (m1.is_zero() || m2.is_zero())
        raise_domain("MalformedResidue", "congruence modulus must be nonzero");
    if ((!r1.is_zero() && r1.c.size() >= m1.c.size()) ||
        (!r2.is_zero() && r2.c.size() >= m2.c.size()))
        raise_domain("MalformedResidue", "residue must have degree below its modulus");

    auto side = [&](std::uint64_t box, const APoly& m, const APoly& r) -> BigInt {
        std::uint64_t degm = m.c.size() - 1;
        if (box >= degm) return big_pow(f.q(), box - degm);
        return (r.is_zero() || r.c.size() <= box) ? 1 : 0;
    };
    BigInt n1 = side(hp.c1 * hp.X, m1, r1);
    BigInt n2 = side(hp.c2 * hp.X, m2, r2);
    if (r2.is_zero()) n2 -= 1;  // g2 = 0 lies in the class but not in C(X)
    return n1 * n2;
}

/// The ratio #S(X)/#C(X) for the main congruence class, over increasing X.
/// Each term is q^{(c1+c2)X-7} / (q^{c1 X}(q^{c2 X}-1)), exact; the sequence
/// decreases strictly to q^{-7}.
inline std::vector<BigRat> density_limit_report(const Field& f, std::uint64_t c1, std::uint64_t c2,
                                                const std::vector<std::uint64_t>& xs) {
    std::vector<BigRat> out;
    std::uint64_t prev = 0;
    for (auto X : xs) {
        if (X <= prev) raise_domain("ThresholdViolation", "X values must be strictly increasing");
        prev = X;
        if (c1 * X < 4 || c2 * X < 4)
            raise_domain("ThresholdViolation",
                         "X below the closed-form threshold c1 X, c2 X >= 4");
        BigInt s = big_pow(f.q(), (c1 + c2) * X - 7);
        BigInt c = big_pow(f.q(), c1 * X) * (big_pow(f.q(), c2 * X) - 1);
        out.emplace_back(s, c);
    }
    return out;
}

enum class CensusMode { single_class, single_tuple, union_all_tuples };

struct CensusReport {
    BigInt total;
    BigInt hits;
    BigRat density_ratio;
    CensusMode mode;
};

constexpr std::uint64_t kDefaultEnumCap = 10'000'000;

/// Exhaustive scan of C(X); hits are data passing check_conditions for one
/// fixed tuple, or possessing any witness at all (union mode). The scan is
/// partitioned over g1 ranges when jobs > 1; counts add up identically for
/// any partition.
inline CensusReport criterion_density(const Field& f, const HeightParams& hp,
                                      std::optional<WitnessTuple> tuple,
                                      std::uint64_t cap = kDefaultEnumCap, unsigned jobs = 1) {
    validate_params(hp);
    BigInt space = big_pow(f.q(), (hp.c1 + hp.c2) * hp.X);
    if (space > cap)
        raise_domain("EnumerationTooLarge", "q^{(c1+c2)X} = " + space.str() +
                                                " exceeds the enumeration cap of " +
                                                std::to_string(cap));
    const std::uint64_t n1 = static_cast<std::uint64_t>(big_pow(f.q(), hp.c1 * hp.X));
    const std::uint64_t n2 = static_cast<std::uint64_t>(big_pow(f.q(), hp.c2 * hp.X));
    const std::size_t w1 = hp.c1 * hp.X, w2 = hp.c2 * hp.X;

    auto scan_range = [&](std::uint64_t lo, std::uint64_t hi) -> std::uint64_t {
        std::uint64_t hits = 0;
        for (std::uint64_t i1 = lo; i1 < hi; ++i1) {
            APoly g1 = poly_from_index(f, w1, i1);
            for (std::uint64_t i2 = 1; i2 < n2; ++i2) {
                Datum w{&f, g1, poly_from_index(f, w2, i2)};
                bool hit = tuple ? check_conditions(w, *tuple).pass
                                 : find_witness(w).has_value();
                if (hit) ++hits;
            }
        }
        return hits;
    };

    std::uint64_t hits = 0;
    if (jobs <= 1) {
        hits = scan_range(0, n1);
    } else {
        std::vector<std::uint64_t> partial(jobs, 0);
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) {
            std::uint64_t lo = n1 * t / jobs, hi = n1 * (t + 1) / jobs;
            pool.emplace_back([&, t, lo, hi] { partial[t] = scan_range(lo, hi); });
        }
        for (auto& th : pool) th.join();
        for (auto h : partial) hits += h;
    }

    BigInt total = BigInt(n1) * (BigInt(n2) - 1);
    CensusReport r;
    r.total = total;
    r.hits = hits;
    r.density_ratio = BigRat(BigInt(hits), total);
    r.mode = tuple ? CensusMode::single_tuple : CensusMode::union_all_tuples;
    return r;
}

/// The fixed congruence class of the density proof for a given tuple:
/// moduli m1 = T(T-a1)(T-a2), m2 = T(T-a1)(T-a2)^2 and the
/// enumeration-first residues b1 (degree < 3) and b2 (degree < 4) with
///   b1 divisible by (T-a1), coprime to T(T-a2);
///   b2 divisible by (T-a2) exactly once, = -a1 eta^{-1} mod (T-a1),
///      coprime to T.
struct CongruenceClass {
    APoly m1, r1, m2, r2;
};

inline CongruenceClass first_admissible_class(const Field& f, const WitnessTuple& t) {
    detail::validate_tuple(f, t);
    APoly T = poly_monomial(f, f.one(), 1);
    APoly l1 = poly_from(f, {f.neg(t.a1), f.one()});
    APoly l2 = poly_from(f, {f.neg(t.a2), f.one()});
    APoly m1 = poly_mul(f, T, poly_mul(f, l1, l2));
    APoly m2 = poly_mul(f, m1, l2);

    std::optional<APoly> b1, b2;
    for (std::uint64_t i = 0; i < f.q() * f.q() * f.q() && !b1; ++i) {
        APoly cand = poly_from_index(f, 3, i);
        if (!f.is_zero(poly_eval(f, cand, t.a1))) continue;
        if (f.is_zero(poly_eval(f, cand, f.zero()))) continue;
        if (f.is_zero(poly_eval(f, cand, t.a2))) continue;
        b1 = cand;
    }
    FqElem target = f.mul(f.neg(t.a1), f.inv(t.eta));
    for (std::uint64_t i = 0; i < f.q() * f.q() * f.q() * f.q() && !b2; ++i) {
        APoly cand = poly_from_index(f, 4, i);
        if (!f.is_zero(poly_eval(f, cand, t.a2))) continue;
        APoly quot = poly_divrem(f, cand, l2).first;
        if (f.is_zero(poly_eval(f, quot, t.a2))) continue;
        if (poly_eval(f, cand, t.a1) != target) continue;
        if (f.is_zero(poly_eval(f, cand, f.zero()))) continue;
        b2 = cand;
    }
    if (!b1 || !b2) raise_internal("NoAdmissibleResidue", "no admissible residue pair exists");
    return {std::move(m1), std::move(*b1), std::move(m2), std::move(*b2)};
}

}  // namespace drinfeld
