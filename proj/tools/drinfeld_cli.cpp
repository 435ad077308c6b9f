// drinfeld: exact arithmetic for rank-2 Drinfeld modules over F_q[T].
//
// Subcommands: check, witness, charpoly, torsion, census, probe, twist,
// selftest. Reports are printed as JSON (default) or text; exit codes are
// 0 = success, 1 = domain error, 2 = usage error, 3 = internal inconsistency.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "drinfeld/census.hpp"
#include "drinfeld/criterion.hpp"
#include "drinfeld/diagnostics.hpp"
#include "drinfeld/drinfeld.hpp"
#include "drinfeld/errors.hpp"
#include "drinfeld/field.hpp"
#include "drinfeld/frobenius.hpp"
#include "drinfeld/io.hpp"
#include "drinfeld/selftest.hpp"
#include "drinfeld/text.hpp"

namespace {

using namespace drinfeld;

struct FieldArgs {
    std::uint64_t p = 0;
    unsigned n = 1;
    std::string modulus;

    Field make() const {
        if (p == 0) throw UsageError("MissingField", "--p is required");
        std::optional<std::vector<std::uint64_t>> mod;
        if (!modulus.empty()) {
            std::vector<std::uint64_t> coeffs;
            std::stringstream ss(modulus);
            std::string tok;
            while (std::getline(ss, tok, ',')) coeffs.push_back(std::stoull(tok));
            mod = std::move(coeffs);
        }
        return make_field(p, n, mod);
    }
};

void add_field_options(CLI::App* cmd, FieldArgs& fa) {
    cmd->add_option("--p", fa.p, "Characteristic (prime)");
    cmd->add_option("--n", fa.n, "Extension degree over F_p (default 1)");
    cmd->add_option("--modulus", fa.modulus,
                    "Comma-separated F_p coefficients of the field modulus, low to high");
}

/// --datum accepts an inline "g1=...;g2=..." string, a path to a file holding
/// one, or a path to a JSON file {"g1": ..., "g2": ...}.
Datum load_datum(const Field& f, const std::string& arg) {
    std::ifstream in(arg);
    if (!in.good()) return parse_datum(f, arg);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    auto nonspace = text.find_first_not_of(" \t\r\n");
    if (nonspace != std::string::npos && text[nonspace] == '{') {
        Json j = Json::parse(text);
        return make_datum(f, parse_poly(f, j.at("g1").get<std::string>()),
                          parse_poly(f, j.at("g2").get<std::string>()));
    }
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    return parse_datum(f, text);
}

std::uint64_t enum_cap_default() {
    if (const char* env = std::getenv("DRINFELD_ENUM_CAP")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw UsageError("BadEnvironment", "DRINFELD_ENUM_CAP is not a number");
        }
    }
    return kDefaultEnumCap;
}

std::string render_text(const Json& j) {
    std::ostringstream out;
    const std::string kind = j.at("report").get<std::string>();
    if (kind == "check" || kind == "witness") {
        if (j.contains("verdict")) out << "verdict: " << j["verdict"].get<std::string>() << "\n";
        if (j.contains("pass")) out << "pass: " << (j["pass"].get<bool>() ? "yes" : "no") << "\n";
        if (!j["witness"].is_null()) {
            const auto& w = j["witness"];
            out << "witness: a1=" << w["a1"].get<std::string>()
                << " a2=" << w["a2"].get<std::string>() << " eta=" << w["eta"].get<std::string>()
                << "\n";
            for (const auto& [key, val] : j["conditions"].items())
                out << "  " << key << ": " << (val.get<bool>() ? "true" : "false") << "\n";
        } else {
            out << "witness: none\n";
        }
    } else if (kind == "charpoly") {
        out << "prime: " << j["prime"].get<std::string>() << "\n";
        out << "a = " << j["a"].get<std::string>() << ", b = " << j["b"].get<std::string>()
            << "\n";
        out << "class mod T: " << j["class"].get<std::string>() << "\n";
    } else if (kind == "torsion") {
        out << "prime: " << j["prime"].get<std::string>() << "\n";
        out << "matrix: " << j["matrix"].dump() << "\n";
        out << "class: " << j["class"].get<std::string>()
            << ", splitting degree: " << j["splitting_degree"].get<std::size_t>() << "\n";
    } else if (kind == "census") {
        out << "mode: " << j["mode"].get<std::string>() << "\n";
        if (j.contains("count")) out << "count: " << j["count"].get<std::string>() << "\n";
        if (j.contains("total")) {
            out << "total: " << j["total"].get<std::string>()
                << ", hits: " << j["hits"].get<std::string>()
                << ", density: " << j["density"].get<std::string>() << "\n";
        }
        if (j.contains("terms")) {
            for (const auto& t : j["terms"])
                out << "X=" << t["X"].get<std::uint64_t>() << ": "
                    << t["ratio"].get<std::string>() << "\n";
        }
    } else if (kind == "probe") {
        out << "primes used: " << j["primes_used"].get<std::size_t>() << "\n";
        for (const auto& [key, val] : j["histogram"].items())
            out << "  (" << key << "): " << val.get<std::size_t>() << "\n";
        out << "consistent_with_full_image: "
            << (j["verdict"]["consistent_with_full_image"].get<bool>() ? "yes" : "no") << "\n";
        out << "unexcluded:";
        for (const auto& o : j["verdict"]["obstructions_unexcluded"])
            out << " " << o.get<std::string>();
        out << "\n";
    } else if (kind == "twist") {
        out << "twisted: g1=" << j["twisted"]["g1"].get<std::string>()
            << "; g2=" << j["twisted"]["g2"].get<std::string>() << "\n";
        out << "j: " << j["j_invariant"].get<std::string>() << " -> "
            << j["j_invariant_twisted"].get<std::string>() << "\n";
    }
    return out.str();
}

void emit(const Json& report, const std::string& format, const std::string& output_path) {
    std::string body = format == "text" ? render_text(report) : report.dump(2) + "\n";
    if (output_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(output_path);
        if (!out) throw UsageError("BadOutputPath", "cannot open " + output_path);
        out << body;
    }
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Exact arithmetic and Galois-image diagnostics for rank-2 Drinfeld modules"};
    app.require_subcommand(1);
    std::string format = "json", output_path;
    app.add_option("--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--output", output_path, "Write the report to a file instead of stdout");

    FieldArgs fa;
    std::string datum_arg, prime_arg, c_arg;

    auto* check = app.add_subcommand("check", "Surjectivity verdict for a datum");
    add_field_options(check, fa);
    check->add_option("--datum", datum_arg, "Datum g1=<poly>;g2=<poly>, or a file")->required();

    auto* witness = app.add_subcommand("witness", "Witness search / tuple check");
    add_field_options(witness, fa);
    witness->add_option("--datum", datum_arg)->required();
    std::string a1_arg, a2_arg, eta_arg;
    witness->add_option("--a1", a1_arg, "Check this tuple instead of searching");
    witness->add_option("--a2", a2_arg);
    witness->add_option("--eta", eta_arg);

    auto* charpoly = app.add_subcommand("charpoly", "Frobenius characteristic polynomial");
    add_field_options(charpoly, fa);
    charpoly->add_option("--datum", datum_arg)->required();
    charpoly->add_option("--prime", prime_arg, "Monic irreducible generator")->required();
    std::size_t search_cap = 6;
    charpoly->add_option("--max-degree", search_cap, "Search cap on deg lambda (default 6)");

    auto* torsion = app.add_subcommand("torsion", "Frobenius matrix on the mod-T torsion");
    add_field_options(torsion, fa);
    torsion->add_option("--datum", datum_arg)->required();
    torsion->add_option("--prime", prime_arg)->required();

    auto* census = app.add_subcommand("census", "Exact counts and densities");
    add_field_options(census, fa);
    std::uint64_t q_arg = 0;
    census->add_option("--q", q_arg, "Field size as a prime power (alternative to --p/--n)");
    HeightParams hp;
    census->add_option("--c1", hp.c1, "Weight of g1 (default 1)");
    census->add_option("--c2", hp.c2, "Weight of g2 (default 1)");
    std::uint64_t x_arg = 0;
    census->add_option("--X", x_arg, "Height cutoff exponent")->required();
    std::string mode = "all";
    census->add_option("--mode", mode)->check(CLI::IsMember({"all", "class", "tuple", "union"}));
    std::string r1_arg, m1_arg, r2_arg, m2_arg;
    census->add_option("--r1", r1_arg);
    census->add_option("--m1", m1_arg);
    census->add_option("--r2", r2_arg);
    census->add_option("--m2", m2_arg);
    census->add_option("--a1", a1_arg, "Witness tuple for tuple/class mode");
    census->add_option("--a2", a2_arg);
    census->add_option("--eta", eta_arg);
    std::uint64_t cap = 0;
    census->add_option("--cap", cap, "Enumeration cap (default 10^7 or DRINFELD_ENUM_CAP)");
    unsigned jobs = 1;
    app.add_option("--jobs", jobs, "Parallel enumeration lanes (census)");

    auto* probe = app.add_subcommand("probe", "Sample Frobenius classes, report obstructions");
    add_field_options(probe, fa);
    probe->add_option("--datum", datum_arg)->required();
    SampleConfig cfg;
    probe->add_option("--max-degree", cfg.max_prime_degree, "Prime degree cap (default 2)");
    probe->add_option("--max-primes", cfg.max_primes, "Stop after this many primes");
    probe->add_flag("--matrices", cfg.use_matrices, "Refine discriminant-zero classes");
    DiagnosticThresholds th;
    probe->add_option("--min-sample", th.min_sample, "Small-sample threshold (default 50)");
    probe->add_option("--trace-zero-threshold", th.trace_zero_suspicion,
                      "Cartan-normalizer suspicion threshold (default 0.75)");

    auto* twistc = app.add_subcommand("twist", "Apply an isomorphism twist");
    add_field_options(twistc, fa);
    twistc->add_option("--datum", datum_arg)->required();
    twistc->add_option("--c", c_arg, "Nonzero twisting constant")->required();

    auto* selftest = app.add_subcommand("selftest", "Run the embedded golden suite");
    (void)selftest;

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand("selftest")) {
            auto res = run_selftest();
            std::cout << res.output;
            return res.failed ? 3 : 0;
        }
        if (app.got_subcommand("census")) {
            Field f = [&] {
                if (q_arg != 0) {
                    std::uint64_t p = q_arg;
                    for (std::uint64_t d = 2; d * d <= q_arg; ++d)
                        if (q_arg % d == 0) {
                            p = d;
                            break;
                        }
                    unsigned n = 0;
                    std::uint64_t rest = q_arg;
                    while (rest > 1) {
                        if (rest % p)
                            throw UsageError("NotPrimePower", "--q must be a prime power");
                        rest /= p;
                        ++n;
                    }
                    return make_field(p, n);
                }
                return fa.make();
            }();
            hp.X = x_arg;
            std::uint64_t effective_cap = cap ? cap : enum_cap_default();
            if (mode == "all") {
                BigInt space = big_pow(f.q(), (hp.c1 + hp.c2) * hp.X);
                emit(census_count_report(f, hp, "all", count_all(f, hp),
                                         space > effective_cap),
                     format, output_path);
            } else if (mode == "class") {
                APoly m1, r1, m2, r2;
                if (!m1_arg.empty() || !m2_arg.empty()) {
                    m1 = parse_poly(f, m1_arg);
                    r1 = parse_poly(f, r1_arg.empty() ? "0" : r1_arg);
                    m2 = parse_poly(f, m2_arg);
                    r2 = parse_poly(f, r2_arg.empty() ? "0" : r2_arg);
                } else if (!a1_arg.empty()) {
                    auto cls = first_admissible_class(
                        f, {parse_element(f, a1_arg), parse_element(f, a2_arg),
                            parse_element(f, eta_arg)});
                    m1 = cls.m1;
                    r1 = cls.r1;
                    m2 = cls.m2;
                    r2 = cls.r2;
                } else {
                    throw UsageError("MissingClass",
                                     "class mode needs --m1/--r1/--m2/--r2 or a witness tuple");
                }
                BigInt space = big_pow(f.q(), (hp.c1 + hp.c2) * hp.X);
                Json j = census_count_report(
                    f, hp, "class", count_congruence_class(f, hp, m1, r1, m2, r2),
                    space > effective_cap);
                j["class"] = {{"m1", poly_to_string(f, m1)},
                              {"r1", poly_to_string(f, r1)},
                              {"m2", poly_to_string(f, m2)},
                              {"r2", poly_to_string(f, r2)}};
                emit(j, format, output_path);
            } else {
                std::optional<WitnessTuple> tuple;
                if (mode == "tuple") {
                    if (a1_arg.empty() || a2_arg.empty() || eta_arg.empty())
                        throw UsageError("MissingTuple", "tuple mode needs --a1 --a2 --eta");
                    tuple = WitnessTuple{parse_element(f, a1_arg), parse_element(f, a2_arg),
                                         parse_element(f, eta_arg)};
                }
                auto rep = criterion_density(f, hp, tuple, effective_cap, jobs);
                emit(census_density_report(f, hp, rep), format, output_path);
            }
            return 0;
        }

        Field f = fa.make();
        Datum w = load_datum(f, datum_arg);
        if (app.got_subcommand("check")) {
            emit(check_report(w, surjectivity_verdict(w)), format, output_path);
        } else if (app.got_subcommand("witness")) {
            if (!a1_arg.empty()) {
                auto rep = check_conditions(w, {parse_element(f, a1_arg),
                                                parse_element(f, a2_arg),
                                                parse_element(f, eta_arg)});
                emit(witness_report(w, rep), format, output_path);
            } else {
                emit(witness_report(w, find_witness(w)), format, output_path);
            }
        } else if (app.got_subcommand("charpoly")) {
            auto lam = make_prime(f, parse_poly(f, prime_arg));
            emit(charpoly_report(w, charpoly_search(w, lam, search_cap)), format, output_path);
        } else if (app.got_subcommand("torsion")) {
            auto lam = make_prime(f, parse_poly(f, prime_arg));
            emit(torsion_report(w, torsion_frobenius_matrix(w, lam)), format, output_path);
        } else if (app.got_subcommand("probe")) {
            auto ev = sample_classes(w, cfg);
            emit(probe_report(w, cfg, ev, obstruction_analysis(f, ev, th)), format, output_path);
        } else if (app.got_subcommand("twist")) {
            Datum t = twist(w, parse_element(f, c_arg));
            emit(twist_report(w, parse_element(f, c_arg), t), format, output_path);
        }
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Json::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }
}

int main(int argc, char** argv) { return run(argc, argv); }
