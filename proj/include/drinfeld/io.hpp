#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "drinfeld/census.hpp"
#include "drinfeld/criterion.hpp"
#include "drinfeld/diagnostics.hpp"
#include "drinfeld/drinfeld.hpp"
#include "drinfeld/field.hpp"
#include "drinfeld/frobenius.hpp"
#include "drinfeld/text.hpp"

namespace drinfeld {

using Json = nlohmann::json;

constexpr int kSchemaVersion = 1;

inline std::string kind_to_string(const std::optional<ConjKind>& k) {
    if (!k) return "unrefined";
    switch (*k) {
        case ConjKind::scalar: return "scalar";
        case ConjKind::split_semisimple: return "split_semisimple";
        case ConjKind::nonsplit_semisimple: return "nonsplit_semisimple";
        case ConjKind::nonsemisimple: return "nonsemisimple";
    }
    return "unrefined";
}

inline std::string obstruction_to_string(Obstruction o) {
    switch (o) {
        case Obstruction::borel: return "borel";
        case Obstruction::cartan_normalizer: return "cartan_normalizer";
        case Obstruction::det_not_onto: return "det_not_onto";
        case Obstruction::small_sample: return "small_sample";
    }
    return "?";
}

inline Json coords_json(const Field& f, FqElem x) {
    Json a = Json::array();
    for (auto c : f.coords_of(x)) a.push_back(c);
    return a;
}

inline Json field_json(const Field& f) {
    Json m = Json::array();
    for (auto c : f.modulus()) m.push_back(c);
    return {{"p", f.p()}, {"n", f.n()}, {"q", f.q()}, {"modulus", m}};
}

inline Json datum_json(const Datum& w) {
    return {{"g1", poly_to_string(*w.field, w.g1)},
            {"g2", poly_to_string(*w.field, w.g2)},
            {"p", w.field->p()},
            {"n", w.field->n()}};
}

inline Json report_header(const std::string& kind) {
    return {{"schema_version", kSchemaVersion}, {"report", kind}};
}

inline Json criterion_conditions_json(const CriterionReport& r) {
    return {{"divisible_T_minus_a1", r.c1_div},
            {"coprime_T_T_minus_a2", r.c2_coprime},
            {"exact_order_T_minus_a2", r.c3_exact_div},
            {"congruence_eta", r.c4_congruence},
            {"coprime_T", r.c5_coprime_T}};
}

inline Json witness_json(const Field& f, const WitnessTuple& t) {
    return {{"a1", element_to_string(f, t.a1)},
            {"a2", element_to_string(f, t.a2)},
            {"eta", element_to_string(f, t.eta)}};
}

inline Json check_report(const Datum& w, const SurjectivityVerdict& v) {
    Json j = report_header("check");
    j["field"] = field_json(*w.field);
    j["datum"] = datum_json(w);
    j["verdict"] = v.proved_surjective ? "proved_surjective" : "unknown";
    if (v.witness) {
        j["witness"] = witness_json(*w.field, v.witness->tuple);
        j["conditions"] = criterion_conditions_json(*v.witness);
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

inline Json witness_report(const Datum& w, const std::optional<CriterionReport>& r) {
    Json j = report_header("witness");
    j["field"] = field_json(*w.field);
    j["datum"] = datum_json(w);
    if (r) {
        j["witness"] = witness_json(*w.field, r->tuple);
        j["conditions"] = criterion_conditions_json(*r);
        j["pass"] = r->pass;
    } else {
        j["witness"] = nullptr;
        j["pass"] = false;
    }
    return j;
}

inline Json charpoly_json(const Field& f, const CharPoly& cp) {
    FqElem abar = poly_coeff(f, cp.a, 0), bbar = poly_coeff(f, cp.b, 0);
    FqElem disc = f.sub(f.mul(abar, abar), f.mul(f.from_int(4), bbar));
    std::optional<ConjKind> kind;
    if (!f.is_zero(disc))
        kind = is_square(f, disc) ? ConjKind::split_semisimple : ConjKind::nonsplit_semisimple;
    return {{"prime", poly_to_string(f, cp.prime.generator)},
            {"a", poly_to_string(f, cp.a)},
            {"b", poly_to_string(f, cp.b)},
            {"a_mod_T", coords_json(f, abar)},
            {"b_mod_T", coords_json(f, bbar)},
            {"class", kind_to_string(kind)}};
}

inline Json charpoly_report(const Datum& w, const CharPoly& cp) {
    Json j = report_header("charpoly");
    j["field"] = field_json(*w.field);
    j["datum"] = datum_json(w);
    j.update(charpoly_json(*w.field, cp));
    return j;
}

inline Json torsion_report(const Datum& w, const FrobMatrix& fm) {
    const Field& f = *w.field;
    Json j = report_header("torsion");
    j["field"] = field_json(f);
    j["datum"] = datum_json(w);
    j["prime"] = poly_to_string(f, fm.prime.generator);
    const Mat2& m = fm.entries;
    j["matrix"] = {{coords_json(f, m.e00), coords_json(f, m.e01)},
                   {coords_json(f, m.e10), coords_json(f, m.e11)}};
    ConjClassLabel cl = conj_class(f, m);
    j["trace"] = coords_json(f, cl.trace);
    j["det"] = coords_json(f, cl.det);
    j["class"] = kind_to_string(cl.kind);
    j["splitting_degree"] = fm.splitting_degree;
    j["splitting_modulus"] = poly_to_string(f, fm.splitting_field.modulus());
    j["basis"] = {poly_to_string(f, fm.basis0), poly_to_string(f, fm.basis1)};
    return j;
}

inline std::string rat_to_string(const BigRat& r) {
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

inline std::string mode_to_string(CensusMode m) {
    switch (m) {
        case CensusMode::single_class: return "class";
        case CensusMode::single_tuple: return "tuple";
        case CensusMode::union_all_tuples: return "union";
    }
    return "?";
}

inline Json census_count_report(const Field& f, const HeightParams& hp, const std::string& mode,
                                const BigInt& count, bool formula_only) {
    Json j = report_header("census");
    j["field"] = field_json(f);
    j["mode"] = mode;
    j["c1"] = hp.c1;
    j["c2"] = hp.c2;
    j["X"] = hp.X;
    j["count"] = count.str();
    j["formula_only"] = formula_only;
    return j;
}

inline Json census_density_report(const Field& f, const HeightParams& hp, const CensusReport& r) {
    Json j = report_header("census");
    j["field"] = field_json(f);
    j["mode"] = mode_to_string(r.mode);
    j["c1"] = hp.c1;
    j["c2"] = hp.c2;
    j["X"] = hp.X;
    j["total"] = r.total.str();
    j["hits"] = r.hits.str();
    j["density"] = rat_to_string(r.density_ratio);
    j["formula_only"] = false;
    return j;
}

inline Json probe_report(const Datum& w, const SampleConfig& cfg, const ImageEvidence& ev,
                         const ImageVerdict& v) {
    const Field& f = *w.field;
    Json j = report_header("probe");
    j["field"] = field_json(f);
    j["datum"] = datum_json(w);
    j["max_prime_degree"] = cfg.max_prime_degree;
    j["use_matrices"] = cfg.use_matrices;
    j["primes_used"] = ev.primes_used;

    Json hist = Json::object();
    for (const auto& [key, count] : ev.class_histogram) {
        auto [tr, det, kind] = key;
        std::optional<ConjKind> k;
        if (kind >= 0) k = static_cast<ConjKind>(kind);
        std::string label = element_to_string(f, {tr}) + "," + element_to_string(f, {det}) + "," +
                            kind_to_string(k);
        hist[label] = count;
    }
    j["histogram"] = hist;

    Json cov = Json::array();
    for (auto d : ev.det_coverage) cov.push_back(element_to_string(f, {d}));
    j["det_coverage"] = cov;
    j["flags"] = {{"found_nonsplit", ev.found_nonsplit},
                  {"found_split_nonscalar", ev.found_split_nonscalar},
                  {"found_nontrivial_unipotent", ev.found_nontrivial_unipotent}};

    Json obs = Json::array();
    for (auto o : v.obstructions_unexcluded) obs.push_back(obstruction_to_string(o));
    j["verdict"] = {{"obstructions_unexcluded", obs},
                    {"consistent_with_full_image", v.consistent_with_full_image}};

    Json table = Json::array();
    for (const auto& sc : ev.table) {
        table.push_back({{"prime", poly_to_string(f, sc.prime.generator)},
                         {"a", poly_to_string(f, sc.a)},
                         {"b", poly_to_string(f, sc.b)},
                         {"trace", element_to_string(f, sc.trace)},
                         {"det", element_to_string(f, sc.det)},
                         {"class", kind_to_string(sc.kind)}});
    }
    j["table"] = table;
    return j;
}

inline Json twist_report(const Datum& w, FqElem c, const Datum& twisted) {
    Json j = report_header("twist");
    j["field"] = field_json(*w.field);
    j["datum"] = datum_json(w);
    j["c"] = element_to_string(*w.field, c);
    j["twisted"] = datum_json(twisted);
    auto jw = j_invariant(w), jt = j_invariant(twisted);
    j["j_invariant"] = poly_to_string(*w.field, jw.num) + "/" + poly_to_string(*w.field, jw.den);
    j["j_invariant_twisted"] =
        poly_to_string(*w.field, jt.num) + "/" + poly_to_string(*w.field, jt.den);
    return j;
}

}  // namespace drinfeld
