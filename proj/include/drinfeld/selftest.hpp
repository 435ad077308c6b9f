#pragma once

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "drinfeld/census.hpp"
#include "drinfeld/criterion.hpp"
#include "drinfeld/diagnostics.hpp"
#include "drinfeld/drinfeld.hpp"
#include "drinfeld/errors.hpp"
#include "drinfeld/field.hpp"
#include "drinfeld/frobenius.hpp"
#include "drinfeld/poly.hpp"
#include "drinfeld/text.hpp"
#include "drinfeld/twisted.hpp"

namespace drinfeld {

/// One golden check: throws (any Error or SelfTestFailure) to fail.
struct SelfTestItem {
    std::string name;
    std::function<void()> run;
};

struct SelfTestFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace selftest_detail {

inline void check(bool cond, const std::string& what) {
    if (!cond) throw SelfTestFailure(what);
}

template <class Fn>
void check_raises(Fn&& fn, const std::string& error_name, const std::string& what) {
    try {
        fn();
    } catch (const Error& e) {
        if (e.name() == error_name) return;
        throw SelfTestFailure(what + " (raised " + e.name() + " instead of " + error_name + ")");
    }
    throw SelfTestFailure(what + " (no error raised)");
}

}  // namespace selftest_detail

/// The embedded golden suite: worked values of every module, all of them
/// independently derivable by hand or by the enumeration oracles in the
/// test suite. Deterministic; no randomness, no timestamps.
inline std::vector<SelfTestItem> selftest_items() {
    using selftest_detail::check;
    using selftest_detail::check_raises;
    std::vector<SelfTestItem> items;
    auto add = [&](std::string name, std::function<void()> fn) {
        items.push_back({std::move(name), std::move(fn)});
    };

    add("field.make_field_5_1", [] {
        Field f = make_field(5, 1);
        check(f.q() == 5 && f.modulus() == std::vector<std::uint64_t>({0, 1}),
              "F_5 must use modulus z");
    });
    add("field.make_field_9_explicit", [] {
        Field f = make_field(3, 2, std::vector<std::uint64_t>{1, 0, 1});
        check(f.q() == 9, "F_9 via z^2+1");
    });
    add("field.composite_p_rejected", [] {
        check_raises([] { make_field(4, 1); }, "NotPrime", "p = 4 must be rejected");
    });
    add("field.nonsquare_f5", [] {
        Field f = make_field(5, 1);
        check(find_nonsquare(f).v == 2, "first non-square of F_5 is 2");
    });
    add("field.nonsquare_f7", [] {
        Field f = make_field(7, 1);
        check(find_nonsquare(f).v == 3, "first non-square of F_7 is 3");
    });
    add("field.nonsquare_even_q", [] {
        check_raises([] { find_nonsquare(make_field(2, 2)); }, "EvenCharacteristic",
                     "char 2 has no non-square");
    });
    add("field.is_square_f5", [] {
        Field f = make_field(5, 1);
        check(is_square(f, {4}) && is_square(f, {0}) && !is_square(f, {3}),
              "squares mod 5 are {0, 1, 4}");
    });
    add("poly.primes_degree1_f5", [] {
        Field f = make_field(5, 1);
        auto ps = list_primes(f, 1);
        check(ps.size() == 5, "five monic linear primes");
        for (std::uint64_t a = 0; a < 5; ++a)
            check(poly_to_string(f, ps[a].generator) ==
                      (a ? "T+" + std::to_string(a) : "T"),
                  "degree-1 primes in order T, T+1, ...");
    });
    add("poly.primes_degree2_f5_count", [] {
        Field f = make_field(5, 1);
        check(list_primes(f, 2).size() == 10, "(q^2-q)/2 = 10 monic irreducible quadratics");
    });
    add("poly.primes_degree3_f3_count", [] {
        Field f = make_field(3, 1);
        check(list_primes(f, 3).size() == 8, "(q^3-q)/3 = 8 for q = 3");
    });
    add("poly.divrem_worked", [] {
        Field f = make_field(5, 1);
        auto [q, r] = poly_divrem(f, parse_poly(f, "T^2+1"), parse_poly(f, "T+4"));
        check(poly_to_string(f, q) == "T+1" && poly_to_string(f, r) == "2",
              "(T^2+1) = (T+4)(T+1) + 2 over F_5");
    });
    add("poly.divrem_unit_and_zero", [] {
        Field f = make_field(5, 1);
        APoly g = parse_poly(f, "3*T^2+T+2");
        auto [q1, r1] = poly_divrem(f, g, poly_one(f));
        check(q1 == g && r1.is_zero(), "division by 1");
        auto [q0, r0] = poly_divrem(f, APoly{}, g);
        check(q0.is_zero() && r0.is_zero(), "zero dividend");
        check_raises([&] { poly_divrem(f, g, APoly{}); }, "DivisionByZeroPolynomial",
                     "division by zero polynomial");
    });
    add("twisted.tau_product_f5", [] {
        Field f = make_field(5, 1);
        auto a = tw_monomial(f, f.from_int(2), 1), b = tw_monomial(f, f.from_int(3), 1);
        auto p = tw_mul(a, b);
        check(p.c.size() == 3 && p.c[2] == f.one() && f.is_zero(p.c[0]) && f.is_zero(p.c[1]),
              "(2 tau)(3 tau) = tau^2 since 3^5 = 3 and 2*3 = 1 mod 5");
    });
    add("twisted.tau_times_Ttau_over_A", [] {
        Field f = make_field(5, 1);
        ADomain A(f);
        auto lhs = tw_mul(tw_monomial(A, A.one(), 1),
                          tw_monomial(A, poly_monomial(f, f.one(), 1), 1));
        check(tw_to_string(A, lhs) == "T^5*t^2", "(tau)(T tau) = T^5 tau^2");
    });
    add("twisted.eval_frobenius", [] {
        Field f = make_field(5, 1);
        ExtField k(f, first_irreducible(f, 2));
        auto tau = tw_monomial(k, k.one(), 1);
        auto x = k.gen();
        check(k.eq(tw_eval(k, tau, x), k.pow(x, 5)), "tau evaluates as x -> x^5 on F_25");
        check(k.is_zero(tw_eval(k, TwistedPoly<ExtField>{&k, {}}, x)), "0(x) = 0");
    });
    add("twisted.eval_reduced_module", [] {
        Field f = make_field(5, 1);
        auto w = tw_from(f, {f.zero(), f.from_int(4), f.from_int(4)});
        check(tw_eval(f, w, f.one()).v == 3, "(0 + 4tau + 4tau^2)(1) = 3 mod 5");
    });
    add("twisted.derivative", [] {
        Field f = make_field(5, 1);
        ADomain A(f);
        auto phiT = tw_from(A, {poly_monomial(f, f.one(), 1), poly_one(f), poly_one(f)});
        check(derivative(A, phiT) == poly_monomial(f, f.one(), 1), "d(phi_T) = T");
        auto fa = tw_from(f, {f.from_int(2), f.one()});
        auto fb = tw_from(f, {f.from_int(3), f.from_int(2)});
        check(derivative(f, tw_mul(fa, fb)).v == 1, "d is multiplicative: 2*3 = 1 mod 5");
    });
    add("twisted.ht_deg", [] {
        Field f = make_field(5, 1);
        auto single = tw_monomial(f, f.from_int(3), 2);
        auto hd = ht_deg(f, single);
        check(hd.first == 2 && hd.second == 2, "g2 tau^2 has ht = deg = 2");
        auto mix = tw_from(f, {f.from_int(2), f.one()});
        auto hd2 = ht_deg(f, mix);
        check(hd2.first == 0 && hd2.second == 1, "T + tau has (ht, deg) = (0, 1)");
        check_raises([&] { ht_deg(f, TwistedPoly<Field>{&f, {}}); }, "ZeroElement",
                     "ht/deg of zero");
    });
    add("drinfeld.phi_T_and_constants", [] {
        Field f = make_field(5, 1);
        ADomain A(f);
        Datum w = make_datum(f, parse_poly(f, "T"), poly_one(f));
        auto phiT = phi_of(A, w, poly_monomial(f, f.one(), 1));
        check(tw_to_string(A, phiT) == "T+T*t+t^2", "phi_T = T + g1 tau + g2 tau^2");
        auto phic = phi_of(A, w, poly_from(f, {f.from_int(3)}));
        check(tw_to_string(A, phic) == "3", "phi_c = c for constants");
    });
    add("drinfeld.j_invariant", [] {
        Field f = make_field(5, 1);
        auto j0 = j_invariant(make_datum(f, {}, parse_poly(f, "T^2+3")));
        check(j0.num.is_zero() && j0.den == poly_one(f), "j(0, g2) = 0");
        auto j1 = j_invariant(make_datum(f, poly_one(f), poly_one(f)));
        check(j1.num == poly_one(f) && j1.den == poly_one(f), "j(1, 1) = 1");
    });
    add("drinfeld.twist_examples", [] {
        Field f = make_field(5, 1);
        Datum w = make_datum(f, poly_one(f), poly_one(f));
        Datum tw1 = twist(w, f.one());
        check(tw1.g1 == w.g1 && tw1.g2 == w.g2, "twist by 1 is the identity");
        Datum tw2 = twist(w, f.from_int(2));
        check(tw2.g1 == w.g1 && tw2.g2 == w.g2, "2^4 = 1 and 2^24 = 1 mod 5");
        check_raises([&] { twist(w, f.zero()); }, "ZeroTwist", "twist by zero");
    });
    add("drinfeld.minimality", [] {
        Field f = make_field(5, 1);
        check(is_minimal(make_datum(f, parse_poly(f, "T"), parse_poly(f, "T+1"))),
              "(T, T+1) is minimal");
        check(!is_minimal(make_datum(f, poly_monomial(f, f.one(), 4),
                                     poly_monomial(f, f.one(), 24))),
              "(T^4, T^24) is non-minimal via f = T");
        check(is_minimal(make_datum(f, {}, poly_monomial(f, f.one(), 23))),
              "(0, T^23) minimal: deg g2 < q^2 - 1");
    });
    add("drinfeld.reduction_kinds", [] {
        Field f = make_field(5, 1);
        auto at_T = linear_prime(f, f.zero());
        auto good = reduce_at(make_datum(f, parse_poly(f, "T+4"), parse_poly(f, "3*T+4")), at_T);
        check(good.kind == ReductionKind::good && good.height && *good.height == 1,
              "(T+4, 3T+4) has good ordinary reduction at (T)");
        auto st = reduce_at(make_datum(f, poly_one(f), parse_poly(f, "T")), at_T);
        check(st.kind == ReductionKind::stable_rank1, "(1, T) drops rank at (T)");
        auto un = reduce_at(make_datum(f, parse_poly(f, "T"), parse_poly(f, "T")), at_T);
        check(un.kind == ReductionKind::unstable, "(T, T) is unstable at (T)");
    });
    add("frobenius.gekeler_paper_instance", [] {
        // q = 5, a1 = 1, eta = 2: any datum with g1(1) = 0 and g2(1) = 2
        // has (a, b) = (0, 2T+3) = (0, eta(a1^{-1}T - 1)) at (T-1).
        Field f = make_field(5, 1);
        Datum w = make_datum(f, parse_poly(f, "T+4"), parse_poly(f, "2"));
        auto cp = charpoly_deg1(w, linear_prime(f, f.one()));
        check(cp.a.is_zero() && poly_to_string(f, cp.b) == "2*T+3",
              "(a, b) = (0, 2T+3) at (T-1)");
        check(poly_coeff(f, cp.b, 0) == f.from_int(3), "b mod T = -eta = 3");
    });
    add("frobenius.charpoly_at_T", [] {
        Field f = make_field(5, 1);
        Datum w = make_datum(f, poly_one(f), poly_one(f));
        auto cp = charpoly_deg1(w, linear_prime(f, f.zero()));
        check(poly_to_string(f, cp.a) == "4" && poly_to_string(f, cp.b) == "4*T",
              "(1,1) at (T): a = 4, b = 4T");
        check(frob_identity_check(w, cp.prime, cp.a, cp.b), "identity holds");
        auto bad = poly_add(f, cp.a, poly_one(f));
        check(!frob_identity_check(w, cp.prime, bad, cp.b), "perturbed trace fails");
    });
    add("frobenius.search_matches_closed_form", [] {
        Field f = make_field(5, 1);
        Datum w = make_datum(f, {}, poly_one(f));
        auto lam = linear_prime(f, f.one());
        auto cp = charpoly_search(w, lam);
        check(cp.a.is_zero() && poly_to_string(f, cp.b) == "4*T+1",
              "(0,1) at (T-1): a = 0, b = 4T+1");
        auto closed = charpoly_deg1(w, lam);
        check(cp.a == closed.a && cp.b == closed.b, "search equals closed form");
    });
    add("frobenius.search_degree2", [] {
        Field f = make_field(5, 1);
        Datum w = make_datum(f, poly_one(f), poly_one(f));
        auto cp = charpoly_search(w, make_prime(f, parse_poly(f, "T^2+2")));
        check(poly_to_string(f, cp.a) == "2*T+1" && poly_to_string(f, cp.b) == "T^2+2",
              "(1,1) at (T^2+2): unique (a, b) = (2T+1, T^2+2)");
    });
    add("frobenius.torsion_worked_example", [] {
        Field f = make_field(5, 1);
        Datum w = make_datum(f, {}, poly_one(f));
        auto fm = torsion_frobenius_matrix(w, linear_prime(f, f.one()));
        auto cl = conj_class(f, fm.entries);
        check(cl.trace.v == 0 && cl.det.v == 1, "char poly X^2 + 1");
        check(cl.kind == ConjKind::split_semisimple, "X^2+1 splits over F_5");
        check(fm.splitting_degree == 4, "roots live in F_{5^4}");
        check(mat2_order(f, fm.entries) == 4, "matrix order equals splitting degree");
    });
    add("frobenius.torsion_bad_reduction", [] {
        Field f = make_field(5, 1);
        Datum w = make_datum(f, parse_poly(f, "T+4"), parse_poly(f, "3*T+4"));
        check_raises([&] { torsion_frobenius_matrix(w, linear_prime(f, f.from_int(2))); },
                     "BadReduction", "g2(2) = 0");
        check_raises([&] { torsion_frobenius_matrix(w, linear_prime(f, f.zero())); },
                     "PrimeIsT", "(T) is excluded");
    });
    add("frobenius.conj_class_examples", [] {
        Field f = make_field(5, 1);
        auto id = mat2_identity(f);
        auto cid = conj_class(f, id);
        check(cid.kind == ConjKind::scalar && cid.trace.v == 2 && cid.det.v == 1,
              "identity is scalar with trace 2, det 1");
        Mat2 m{f.zero(), f.neg(f.one()), f.one(), f.zero()};  // char poly X^2+1
        check(conj_class(f, m).kind == ConjKind::split_semisimple,
              "disc = -4 = 1 is a nonzero square mod 5");
        Mat2 ns{f.zero(), f.neg(f.neg(f.from_int(2))), f.one(), f.zero()};  // det -eta = 3
        check(conj_class(f, ns).kind == ConjKind::nonsplit_semisimple,
              "trace 0, det -eta is nonsplit");
    });
    add("criterion.worked_example", [] {
        Field f = make_field(5, 1);
        Datum w = make_datum(f, parse_poly(f, "T+4"), parse_poly(f, "3*T+4"));
        auto r = check_conditions(w, {{1}, {2}, {2}});
        check(r.pass && r.c1_div && r.c2_coprime && r.c3_exact_div && r.c4_congruence &&
                  r.c5_coprime_T,
              "(T+4, 3T+4) passes with (1, 2, 2)");
        auto rT = check_conditions(make_datum(f, parse_poly(f, "T"), parse_poly(f, "3*T+4")),
                                   {{1}, {2}, {2}});
        check(!rT.c2_coprime && !rT.pass, "T | g1 violates coprimality to T(T-a2)");
        check_raises([&] { check_conditions(w, {{1}, {2}, {4}}); }, "EtaIsSquare",
                     "eta = 4 = 2^2 rejected");
    });
    add("criterion.find_witness", [] {
        Field f = make_field(5, 1);
        auto r = find_witness(make_datum(f, parse_poly(f, "T+4"), parse_poly(f, "3*T+4")));
        check(r.has_value() && r->tuple == WitnessTuple{{1}, {2}, {2}},
              "enumeration-first witness is (1, 2, 2)");
        check(!find_witness(make_datum(f, {}, poly_one(f))).has_value(),
              "(0, 1) has no witness");
        Field f3 = make_field(3, 1);
        check_raises([&] { find_witness(make_datum(f3, poly_one(f3), poly_one(f3))); },
                     "SmallOrEvenQ", "q = 3 rejected");
    });
    add("criterion.verdict", [] {
        Field f = make_field(5, 1);
        check(surjectivity_verdict(make_datum(f, parse_poly(f, "T+4"), parse_poly(f, "3*T+4")))
                  .proved_surjective,
              "worked example proves surjective");
        check(!surjectivity_verdict(make_datum(f, {}, poly_one(f))).proved_surjective,
              "(0, 1) stays unknown");
    });
    add("census.count_all", [] {
        Field f = make_field(5, 1);
        check(count_all(f, {1, 1, 4}) == 390000, "5^4 (5^4 - 1) = 390000");
        check(count_all(f, {1, 1, 1}) == 20, "5 * 4 = 20 at X = 1");
    });
    add("census.class_count_theorem_moduli", [] {
        Field f = make_field(5, 1);
        auto cls = first_admissible_class(f, {{1}, {2}, {2}});
        check(count_congruence_class(f, {1, 1, 4}, cls.m1, cls.r1, cls.m2, cls.r2) == 5,
              "#S(4) = 5^{8-7} = 5");
        check(count_congruence_class(f, {1, 1, 5}, cls.m1, cls.r1, cls.m2, cls.r2) == 125,
              "#S(5) = 5^{10-7} = 125");
    });
    add("census.density_term_x4", [] {
        Field f = make_field(5, 1);
        auto seq = density_limit_report(f, 1, 1, {4});
        check(seq.size() == 1 && seq[0] == BigRat(1, 78000), "term X = 4 is 1/78000");
        check(seq[0] > BigRat(1, 78125), "every term exceeds q^{-7}");
    });
    add("census.tuple_density_x2", [] {
        Field f = make_field(5, 1);
        auto r = criterion_density(f, {1, 1, 2}, WitnessTuple{{1}, {2}, {2}});
        check(r.total == 600 && r.hits == 4, "single-tuple (1,2,2) hits 4 of 600 at X = 2");
    });
    add("census.union_density_x2", [] {
        Field f = make_field(5, 1);
        auto r = criterion_density(f, {1, 1, 2}, std::nullopt);
        check(r.total == 600 && r.hits == 96, "union hits 96 of 600 at X = 2");
    });
    add("diagnostics.trace_zero_for_zero_g1", [] {
        Field f = make_field(5, 1);
        SampleConfig cfg;
        cfg.max_prime_degree = 1;
        auto ev = sample_classes(make_datum(f, {}, poly_one(f)), cfg);
        check(ev.primes_used == 4, "four admissible degree-1 primes");
        for (const auto& sc : ev.table)
            selftest_detail::check(sc.trace.v == 0, "g1 = 0 forces trace 0 at degree 1");
        auto v = obstruction_analysis(f, ev);
        check(v.obstructions_unexcluded.count(Obstruction::cartan_normalizer) == 1,
              "all-zero traces leave the Cartan normalizer unexcluded");
    });
    add("diagnostics.histogram_contains_0_minus_eta", [] {
        Field f = make_field(5, 1);
        Datum w = make_datum(f, parse_poly(f, "T+4"), parse_poly(f, "3*T+4"));
        SampleConfig cfg;
        cfg.max_prime_degree = 1;
        auto ev = sample_classes(w, cfg);
        // witness (1, 2, 2): at lambda_1 = (T-1) the class is (0, -eta) = (0, 3)
        check(ev.class_histogram.count({0, 3, 2}) == 1,
              "class (trace 0, det -eta) sampled at lambda_1");
    });
    add("diagnostics.det_value_identity", [] {
        Field f = make_field(5, 1);
        Datum w = make_datum(f, parse_poly(f, "T+4"), parse_poly(f, "3*T+4"));
        SampleConfig cfg;
        cfg.max_prime_degree = 1;
        for (const auto& sc : sample_classes(w, cfg).table) {
            FqElem alpha = f.neg(sc.prime.generator.c[0]);
            FqElem expect = f.mul(alpha, f.inv(poly_eval(f, w.g2, alpha)));
            selftest_detail::check(sc.det == expect, "det mod T = alpha / g2(alpha)");
        }
    });
    add("diagnostics.cross_validate_worked_pair", [] {
        Field f = make_field(5, 1);
        SampleConfig cfg;
        cfg.max_prime_degree = 1;
        cfg.use_matrices = true;
        auto cv = cross_validate(make_datum(f, {}, poly_one(f)), cfg);
        check(cv.primes_checked == 4, "matrix and search agree at all degree-1 primes");
    });

    return items;
}

struct SelfTestResult {
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::string output;
};

inline SelfTestResult run_selftest(const std::vector<SelfTestItem>& items) {
    SelfTestResult res;
    std::ostringstream out;
    for (const auto& item : items) {
        try {
            item.run();
            out << "ok   " << item.name << "\n";
            ++res.passed;
        } catch (const std::exception& e) {
            out << "FAIL " << item.name << ": " << e.what() << "\n";
            ++res.failed;
        }
    }
    out << (res.failed ? "FAILED" : "PASSED") << " " << res.passed << "/"
        << (res.passed + res.failed) << "\n";
    res.output = out.str();
    return res;
}

inline SelfTestResult run_selftest() { return run_selftest(selftest_items()); }

}  // namespace drinfeld
