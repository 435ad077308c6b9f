#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "drinfeld/criterion.hpp"
#include "drinfeld/drinfeld.hpp"
#include "drinfeld/errors.hpp"
#include "drinfeld/field.hpp"
#include "drinfeld/frobenius.hpp"
#include "drinfeld/poly.hpp"

namespace drinfeld {

/// Sampling plan: primes of degree <= max_prime_degree in enumeration order,
/// excluding (T) and primes of bad reduction, up to max_primes. Sampling is
/// deterministic; `seed` is reserved for a future subsampling mode.
struct SampleConfig {
    std::size_t max_prime_degree = 2;
    std::size_t max_primes = static_cast<std::size_t>(-1);
    bool use_matrices = false;
    std::uint64_t seed = 0;
};

/// Sampled conjugacy data of one Frobenius class.
struct SampledClass {
    PrimeIdeal prime;
    APoly a, b;
    FqElem trace, det;                  // (a, b) mod T
    std::optional<ConjKind> kind;       // semisimple kinds from the discriminant;
                                        // scalar/nonsemisimple only with matrices
};

struct ImageEvidence {
    /// (trace rank, det rank, kind code or -1) -> count; total = primes_used.
    std::map<std::tuple<std::uint64_t, std::uint64_t, int>, std::size_t> class_histogram;
    std::set<std::uint64_t> det_coverage;  // subset of F_q^* by element rank
    bool found_nonsplit = false;
    bool found_split_nonscalar = false;
    bool found_nontrivial_unipotent = false;
    std::size_t primes_used = 0;
    std::vector<SampledClass> table;  // per-prime audit trail
};

namespace detail {

inline std::vector<PrimeIdeal> admissible_primes(const Datum& w, const SampleConfig& cfg) {
    std::vector<PrimeIdeal> out;
    const Field& f = *w.field;
    for (std::size_t d = 1; d <= cfg.max_prime_degree; ++d) {
        for (auto& p : list_primes(f, d)) {
            if (out.size() >= cfg.max_primes) return out;
            if (d == 1 && f.is_zero(p.generator.c[0])) continue;  // (T)
            if (!good_reduction_at(w, p)) continue;
            out.push_back(p);
        }
    }
    return out;
}

inline int kind_code(const std::optional<ConjKind>& k) {
    if (!k) return -1;
    switch (*k) {
        case ConjKind::scalar: return 0;
        case ConjKind::split_semisimple: return 1;
        case ConjKind::nonsplit_semisimple: return 2;
        case ConjKind::nonsemisimple: return 3;
    }
    return -1;
}

}  // namespace detail

/// Frobenius conjugacy-class statistics over the admissible primes. The
/// discriminant of X^2 - trace X + det already separates split from
/// nonsplit semisimple classes; matrices are only consulted to split the
/// discriminant-zero classes into scalar vs nonsemisimple.
inline ImageEvidence sample_classes(const Datum& w, const SampleConfig& cfg) {
    const Field& f = *w.field;
    if (!f.q_odd() || f.q() < 5)
        raise_domain("SmallOrEvenQ", "class sampling requires odd q >= 5");
    auto primes = detail::admissible_primes(w, cfg);
    if (primes.empty())
        raise_domain("NoAdmissiblePrimes", "no good primes of the requested degrees");

    ImageEvidence ev;
    for (const auto& lambda : primes) {
        CharPoly cp = charpoly_search(w, lambda);
        SampledClass sc;
        sc.prime = lambda;
        sc.a = cp.a;
        sc.b = cp.b;
        sc.trace = poly_coeff(f, cp.a, 0);
        sc.det = poly_coeff(f, cp.b, 0);
        FqElem disc = f.sub(f.mul(sc.trace, sc.trace), f.mul(f.from_int(4), sc.det));
        if (!f.is_zero(disc)) {
            if (is_square(f, disc)) {
                sc.kind = ConjKind::split_semisimple;
                ev.found_split_nonscalar = true;
            } else {
                sc.kind = ConjKind::nonsplit_semisimple;
                ev.found_nonsplit = true;
            }
        } else if (cfg.use_matrices) {
            FrobMatrix fm = torsion_frobenius_matrix(w, lambda);
            sc.kind = conj_class(f, fm.entries).kind;
            if (sc.kind == ConjKind::nonsemisimple) ev.found_nontrivial_unipotent = true;
        }
        ev.class_histogram[{sc.trace.v, sc.det.v, detail::kind_code(sc.kind)}]++;
        ev.det_coverage.insert(sc.det.v);
        ev.table.push_back(std::move(sc));
    }
    ev.primes_used = primes.size();
    return ev;
}

enum class Obstruction { borel, cartan_normalizer, det_not_onto, small_sample };

struct DiagnosticThresholds {
    std::size_t min_sample = 50;
    double trace_zero_suspicion = 0.75;
};

/// One-sided verdict: which proper-subgroup shapes the sampled classes fail
/// to exclude. An empty set is consistency with the full image, never a
/// proof of it.
struct ImageVerdict {
    std::set<Obstruction> obstructions_unexcluded;
    bool consistent_with_full_image = false;
};

inline ImageVerdict obstruction_analysis(const Field& f, const ImageEvidence& ev,
                                         DiagnosticThresholds th = {}) {
    ImageVerdict v;
    if (!ev.found_nonsplit) v.obstructions_unexcluded.insert(Obstruction::borel);

    std::size_t trace_zero = 0;
    bool nonss_nonzero_trace = false;
    for (const auto& [key, count] : ev.class_histogram) {
        auto [tr, det, kind] = key;
        (void)det;
        if (tr == 0) trace_zero += count;
        if (kind == 3 && tr != 0) nonss_nonzero_trace = true;
    }
    double frac = ev.primes_used ? static_cast<double>(trace_zero) / ev.primes_used : 1.0;
    if (frac >= th.trace_zero_suspicion && !nonss_nonzero_trace)
        v.obstructions_unexcluded.insert(Obstruction::cartan_normalizer);

    if (ev.det_coverage.size() != f.q() - 1)
        v.obstructions_unexcluded.insert(Obstruction::det_not_onto);
    if (ev.primes_used < th.min_sample)
        v.obstructions_unexcluded.insert(Obstruction::small_sample);

    v.consistent_with_full_image = v.obstructions_unexcluded.empty();
    return v;
}

/// Recomputes every sampled class along both routes: the identity search on
/// (a, b) and the explicit torsion matrix. A disagreement is an internal
/// inconsistency in the Frobenius machinery, reported as a hard error with
/// the offending prime and both values.
struct CrossValidation {
    std::size_t primes_checked = 0;
};

inline CrossValidation cross_validate(const Datum& w, const SampleConfig& cfg) {
    const Field& f = *w.field;
    auto primes = detail::admissible_primes(w, cfg);
    if (primes.empty())
        raise_domain("NoAdmissiblePrimes", "no good primes of the requested degrees");
    CrossValidation cv;
    for (const auto& lambda : primes) {
        CharPoly cp = charpoly_search(w, lambda);
        FrobMatrix fm = torsion_frobenius_matrix(w, lambda);
        FqElem abar = poly_coeff(f, cp.a, 0), bbar = poly_coeff(f, cp.b, 0);
        FqElem tr = mat2_trace(f, fm.entries), det = mat2_det(f, fm.entries);
        if (tr != abar || det != bbar)
            raise_internal(
                "InternalInconsistency",
                "search and matrix char polys disagree at prime with trace/det ranks (" +
                    std::to_string(abar.v) + "," + std::to_string(bbar.v) + ") vs (" +
                    std::to_string(tr.v) + "," + std::to_string(det.v) + ")");
        ++cv.primes_checked;
    }
    return cv;
}

}  // namespace drinfeld
