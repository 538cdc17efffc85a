// fkg: exact evaluation, certification and stress-testing of higher-order
// FKG-type correlation inequalities (conjugate cumulants) on finite
// distributive lattices.
//
// Exit codes: 0 = pass (or inconclusive), 1 = violation / witness found,
// 2 = usage or data error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "fkg/apps.hpp"
#include "fkg/certificates.hpp"
#include "fkg/report.hpp"
#include "fkg/verify.hpp"

namespace {

using namespace fkg;

struct GlobalOptions {
    std::string format = "text";
    bool timing = false;
};

void emit(const Report& report, const GlobalOptions& opts) {
    if (opts.format == "json")
        std::cout << report.to_json(opts.timing).dump(2) << '\n';
    else
        std::cout << report.to_text(opts.timing);
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path, "cannot open file");
    json j;
    in >> j;
    return j;
}

LatticeShape parse_shape(const std::string& text) {
    std::vector<int> lens;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        lens.push_back(std::stoi(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return LatticeShape(lens);
}

CumulantSpec spec_from_flags(int m, const std::string& kind, const std::string& coeffs_file) {
    if (kind == "conjugate") return CumulantSpec::conjugate(m);
    if (kind == "cumulant") return CumulantSpec::cumulant(m);
    if (kind == "custom") {
        if (coeffs_file.empty())
            throw std::invalid_argument("custom kind needs --coeffs <file>");
        return spec_from_json(load_json_file(coeffs_file));
    }
    throw std::invalid_argument("unknown kind \"" + kind + "\"");
}

std::string ratio_text(const SweepReport& rep) {
    return std::to_string(rep.violations) + " violations in " + std::to_string(rep.trials) +
           " trials, min value " + to_string(rep.min_value);
}

int run_certify(int m, const std::string& kind, const std::string& coeffs_file,
                const std::string& out_file, const GlobalOptions& opts) {
    Report report;
    report.command = "certify";
    report.config = json{{"m", m}, {"kind", kind}};
    const CumulantSpec spec = spec_from_flags(m, kind, coeffs_file);
    const Certificate cert = certify(spec);
    report.payload["certificate"] = certificate_to_json(cert);
    report.add_check({"all shift-expansion coefficients >= 0 for " + spec.id(),
                      std::to_string(cert.monomial_count) + " monomials",
                      cert.pass ? Outcome::pass : Outcome::violation});
    report.settle_outcome();
    if (!out_file.empty()) {
        std::ofstream out(out_file);
        out << certificate_to_json(cert).dump(2) << '\n';
    }
    emit(report, opts);
    return report.exit_code();
}

int run_sweep(int m, const std::string& kind, const std::string& shape_text, int trials,
              std::uint64_t seed, bool allow_negative, const std::string& function_mode,
              const std::string& witness_file, const GlobalOptions& opts) {
    Report report;
    report.command = "sweep";
    report.config = json{{"m", m},           {"kind", kind},
                         {"shape", shape_text}, {"trials", trials},
                         {"seed", std::to_string(seed)},
                         {"allow_negative", allow_negative},
                         {"function_mode", function_mode}};
    const CumulantSpec spec = spec_from_flags(m, kind, "");
    InstanceGenConfig cfg;
    cfg.shape = parse_shape(shape_text);
    cfg.seed = seed;
    cfg.allow_negative_functions = allow_negative;
    if (function_mode == "indicator-mixture")
        cfg.function_mode = FunctionMode::indicator_mixture;
    else if (function_mode != "increment-sum")
        throw std::invalid_argument("unknown function mode \"" + function_mode + "\"");

    const SweepReport rep = sweep(spec, cfg, trials);
    report.add_check({spec.id() + " >= 0 over " + std::to_string(trials) + " MTP2 instances",
                      ratio_text(rep), rep.violations == 0 ? Outcome::pass : Outcome::violation});
    if (rep.first_witness) {
        report.payload["witness"] = witness_to_json(*rep.first_witness);
        if (!witness_file.empty()) {
            std::ofstream out(witness_file);
            out << witness_to_json(*rep.first_witness).dump(2) << '\n';
        }
    }
    report.settle_outcome();
    emit(report, opts);
    return report.exit_code();
}

int run_replay(const std::string& witness_file, const GlobalOptions& opts) {
    Report report;
    report.command = "replay";
    report.config = json{{"witness", witness_file}};
    const Witness w = witness_from_json(load_json_file(witness_file));
    const Rational value = evaluate_kappa(w.spec, w.measure, w.functions);
    const bool reproduced = value == w.value;
    if (!reproduced) {
        report.add_check({"stored value reproduces",
                          "stored " + to_string(w.value) + ", recomputed " + to_string(value),
                          Outcome::error});
    } else {
        report.add_check({"stored value reproduces", to_string(value), Outcome::pass});
        report.add_check({"claim \"" + w.claim + "\"",
                          value < 0 ? "violated by this instance" : "attained",
                          value < 0 ? Outcome::violation : Outcome::pass});
    }
    report.payload["value"] = to_string(value);
    report.settle_outcome();
    emit(report, opts);
    return report.exit_code();
}

int run_checks(const std::string& which, const GlobalOptions& opts) {
    Report report;
    report.command = "checks " + which;

    if (which == "identities") {
        for (int m = 2; m <= 5; ++m) {
            const Integer zs = zero_sum(CumulantSpec::conjugate(m));
            report.add_check({"all-ones zero sum, order " + std::to_string(m), to_string(zs),
                              zs == 0 ? Outcome::pass : Outcome::violation});
        }
        const Integer zs6 = zero_sum(CumulantSpec::conjugate(6));
        report.add_check({"all-ones sum is positive at order 6", to_string(zs6),
                          zs6 > 0 ? Outcome::pass : Outcome::violation});
        for (int m = 3; m <= 5; ++m) {
            const ReductionResult red = reduction_check(m, SpecKind::conjugate);
            const bool ok = red.proportional && red.factor == Rational(m - 2);
            report.add_check({"last-argument contraction factor at order " + std::to_string(m),
                              red.proportional ? to_string(red.factor) : "not proportional",
                              ok ? Outcome::pass : Outcome::violation});
        }
        const ReductionResult red6 = reduction_check(6, SpecKind::conjugate);
        report.add_check({"order-6 contraction is not proportional",
                          red6.proportional ? "unexpectedly proportional" : "confirmed",
                          red6.proportional ? Outcome::violation : Outcome::pass});
    } else if (which == "gap-sign") {
        auto arr = [](long a, long b, long c) {
            return std::array<Rational, 3>{Rational(a), Rational(b), Rational(c)};
        };
        const Rational set1 = conditioning_gap_difference(
            arr(1, 2, 3), arr(1, 2, 3), arr(4, 5, 6),
            {Rational(1, 10), Rational(2, 10), Rational(3, 10)});
        report.add_check({"fixed parameter set 1 difference", to_string(set1), Outcome::pass});
        const Rational set2 =
            conditioning_gap_difference(arr(1, 2, 3), arr(1, 2, 3), arr(1, 2, 3), arr(1, 2, 3));
        report.add_check({"fixed parameter set 2 difference is positive", to_string(set2),
                          set2 > 0 ? Outcome::pass : Outcome::violation});
        const GapWitness w = gap_monotonicity_witness();
        report.add_check({"gap is not monotone in the conditioning set",
                          "uniform 2x2 witness: g(empty) - g({0}) = " + to_string(w.difference),
                          w.difference < 0 ? Outcome::pass : Outcome::violation});
        report.payload["set1"] = to_string(set1);
        report.payload["set2"] = to_string(set2);
        report.payload["witness_difference"] = to_string(w.difference);
    } else if (which == "coefficient-bounds") {
        const IndicatorScanReport scan = indicator_coefficient_scan(2000, 1);
        report.add_check({"c1=1 indicator witness attains a negative bound",
                          "value " + to_string(scan.witness_value) + " equals bound " +
                              to_string(scan.witness_bound),
                          scan.witness_value < 0 && scan.witness_value == scan.witness_bound
                              ? Outcome::pass
                              : Outcome::violation});
        report.add_check({"c1=2 indicator search finds no violation",
                          std::to_string(scan.trials) + " trials",
                          scan.violations_at_c1_2 == 0 ? Outcome::pass : Outcome::violation});
        report.payload["witness"] = json{{"measure", measure_to_json(scan.witness_measure)},
                                         {"value", to_string(scan.witness_value)},
                                         {"bound", to_string(scan.witness_bound)}};
    } else if (which == "indicator-cases") {
        SplitMix64 seeds(3);
        int checked = 0;
        for (int case_id = 1; case_id <= 6; ++case_id) {
            for (int rep = 0; rep < 5; ++rep) {
                InstanceGenConfig cfg;
                cfg.shape = LatticeShape({4, 4});
                cfg.seed = seeds.next();
                SplitMix64 rng(cfg.seed);
                const LatticeMeasure mu = generate_measure(rng, cfg);
                std::array<int, 3> sorted{static_cast<int>(rng.below(5)),
                                          static_cast<int>(rng.below(5)),
                                          static_cast<int>(rng.below(5))};
                std::sort(sorted.begin(), sorted.end());
                IndicatorTriple t;
                t.a = {static_cast<int>(rng.below(5)), static_cast<int>(rng.below(5)),
                       static_cast<int>(rng.below(5))};
                std::sort(t.a.begin(), t.a.end());
                switch (case_id) {
                    case 1: t.b = {sorted[0], sorted[1], sorted[2]}; break;
                    case 2: t.b = {sorted[0], sorted[2], sorted[1]}; break;
                    case 3: t.b = {sorted[1], sorted[0], sorted[2]}; break;
                    case 4: t.b = {sorted[2], sorted[0], sorted[1]}; break;
                    case 5: t.b = {sorted[1], sorted[2], sorted[0]}; break;
                    default: t.b = {sorted[2], sorted[1], sorted[0]}; break;
                }
                indicator_case_eval(mu, t, case_id);  // throws on any mismatch
                ++checked;
            }
        }
        report.add_check({"closed forms equal the direct evaluation",
                          std::to_string(checked) + " random grid instances across all 6 cases",
                          Outcome::pass});
    } else if (which == "duplicate-vars") {
        const Certificate cert = duplicate_variables_certificate();
        report.add_check({"symmetrized integrand has nonnegative increment coefficients",
                          std::to_string(cert.monomial_count) + " monomials",
                          cert.pass ? Outcome::pass : Outcome::violation});
        report.payload["certificate"] = certificate_to_json(cert);
    } else {
        throw std::invalid_argument("unknown check \"" + which + "\"");
    }
    report.settle_outcome();
    emit(report, opts);
    return report.exit_code();
}

int run_apps(const std::string& which, const std::string& input_file, const GlobalOptions& opts) {
    Report report;
    report.command = "apps " + which;
    report.config = json{{"input", input_file}};
    const json in = load_json_file(input_file);

    if (which == "bernstein") {
        const int n = in.at("n").get<int>();
        const Rational x = rational_from_json(in.at("x"), "x");
        const auto f1 = rational_vector_from_json(in.at("f1"), "f1");
        const auto f2 = rational_vector_from_json(in.at("f2"), "f2");
        const auto f3 = rational_vector_from_json(in.at("f3"), "f3");
        const Rational value = bernstein_check(n, x, f1, f2, f3);
        report.payload["value"] = to_string(value);
        report.add_check({"third-order Bernstein expression is nonnegative", to_string(value),
                          value >= 0 ? Outcome::pass : Outcome::violation});
    } else if (which == "logconvex") {
        const auto a = rational_vector_from_json(in.at("a"), "a");
        const auto alpha = rational_vector_from_json(in.at("alpha"), "alpha");
        const auto beta = rational_vector_from_json(in.at("beta"), "beta");
        const auto gamma = rational_vector_from_json(in.at("gamma"), "gamma");
        const Rational value = logconvex_check(a, alpha, beta, gamma);
        report.payload["value"] = to_string(value);
        report.add_check({"third-order log-convex sum expression is nonnegative", to_string(value),
                          value >= 0 ? Outcome::pass : Outcome::violation});
    } else if (which == "kleitman") {
        const FamilyOfSubsets U1 = family_from_json(in.at("U1"));
        const FamilyOfSubsets U2 = family_from_json(in.at("U2"));
        const FamilyOfSubsets L = family_from_json(in.at("L"));
        const Integer value = kleitman_check(U1, U2, L);
        report.payload["value"] = to_string(value);
        report.add_check({"subset-family expression is nonnegative", to_string(value),
                          value >= 0 ? Outcome::pass : Outcome::violation});
    } else if (which == "matrix") {
        const RationalMatrix R = matrix_from_json(in.at("R"));
        const RationalMatrix F1 = matrix_from_json(in.at("F1"));
        const RationalMatrix F2 = matrix_from_json(in.at("F2"));
        const RationalMatrix F3 = matrix_from_json(in.at("F3"));
        const Rational value = triangle_hadamard_check(R, F1, F2, F3);
        report.payload["value"] = to_string(value);
        report.add_check({"Hadamard-product expression is nonnegative", to_string(value),
                          value >= 0 ? Outcome::pass : Outcome::violation});
    } else if (which == "psd") {
        const RationalMatrix M = matrix_from_json(in.at("M"));
        const Rational t = rational_from_json(in.at("t"), "t");
        const std::string kind_text = in.value("kind", std::string("det"));
        const PsdMeasureKind kind =
            kind_text == "rank" ? PsdMeasureKind::rank : PsdMeasureKind::det;
        std::vector<LatticeFunction> fs;
        if (in.contains("functions"))
            for (const auto& fj : in["functions"]) fs.push_back(function_from_json(fj));
        const bool eigen = in.value("eigen_example", false);
        const PsdReport rep = psd_measure_check(M, t, kind, fs, eigen);
        report.add_check({"submatrix measure is MTP2", rep.exact ? "exact" : "binary64",
                          rep.mtp2 ? Outcome::pass : Outcome::violation});
        if (!fs.empty()) {
            if (rep.exact) {
                report.payload["kappa3"] = to_string(rep.kappa3);
                report.add_check({"third-order value is nonnegative", to_string(rep.kappa3),
                                  rep.kappa3 >= 0 ? Outcome::pass : Outcome::violation});
            } else {
                report.payload["kappa3_float"] = rep.kappa3_float;
            }
        }
        if (rep.eigen_example) {
            report.payload["eigen_value"] = rep.eigen_value;
            report.payload["eigen_status"] = rep.eigen_status;
            report.add_check({"eigenvalue ratio inequality", std::to_string(rep.eigen_value),
                              rep.eigen_status == "pass"
                                  ? Outcome::pass
                                  : rep.eigen_status == "inconclusive" ? Outcome::inconclusive
                                                                       : Outcome::violation});
        }
    } else if (which == "ranking") {
        const int m = in.at("m").get<int>();
        const int n = in.at("n").get<int>();
        auto relations = [&](const char* key) {
            std::vector<std::pair<int, int>> out;
            if (!in.contains(key)) return out;
            for (const auto& pair : in[key])
                out.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
            return out;
        };
        const RankingReport rep =
            ranking_monotonicity(m, n, relations("theta"), relations("theta2"));
        report.payload["p_given_theta"] = to_string(rep.p_given_theta);
        report.payload["p_given_theta_prime"] = to_string(rep.p_given_theta_prime);
        report.add_check({"conditional probability is monotone in the added relations",
                          to_string(rep.p_given_theta) + " -> " + to_string(rep.p_given_theta_prime),
                          rep.monotone ? Outcome::pass : Outcome::violation});
    } else if (which == "exchangeable") {
        const LatticeMeasure mu = measure_from_json(in.at("measure"));
        const int a = in.at("a").get<int>();
        const int m = in.at("m").get<int>();
        const Rational value = exchangeable_bound_check(mu.normalized(), a, m);
        report.payload["value"] = to_string(value);
        report.add_check({"exchangeable lower-orthant expression is nonpositive", to_string(value),
                          value <= 0 ? Outcome::pass : Outcome::violation});
    } else {
        throw std::invalid_argument("unknown application \"" + which + "\"");
    }
    report.settle_outcome();
    emit(report, opts);
    return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact FKG-type inequality toolkit on finite distributive lattices"};
    app.require_subcommand(1);
    GlobalOptions opts;
    app.add_option("--format", opts.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--timing", opts.timing, "include wall-clock timing in the output");

    auto* certify_cmd = app.add_subcommand("certify", "monomial-nonnegativity certificate");
    int cert_m = 3;
    std::string cert_kind = "conjugate", cert_coeffs, cert_out;
    certify_cmd->add_option("--m", cert_m, "order")->required();
    certify_cmd->add_option("--kind", cert_kind, "conjugate, cumulant or custom");
    certify_cmd->add_option("--coeffs", cert_coeffs, "coefficient JSON for custom kind");
    certify_cmd->add_option("--out", cert_out, "write the certificate JSON here");

    auto* sweep_cmd = app.add_subcommand("sweep", "randomized nonnegativity sweep");
    int sweep_m = 3, sweep_trials = 1000;
    std::uint64_t sweep_seed = 0;
    std::string sweep_kind = "conjugate", sweep_shape = "2,2,2";
    std::string sweep_function_mode = "increment-sum", sweep_witness;
    bool sweep_allow_negative = false;
    sweep_cmd->add_option("--m", sweep_m, "order")->required();
    sweep_cmd->add_option("--kind", sweep_kind, "conjugate or cumulant");
    sweep_cmd->add_option("--shape", sweep_shape, "chain lengths, e.g. 2,2,2");
    sweep_cmd->add_option("--trials", sweep_trials, "number of instances");
    sweep_cmd->add_option("--seed", sweep_seed, "RNG seed");
    sweep_cmd->add_option("--function-mode", sweep_function_mode,
                          "increment-sum or indicator-mixture");
    sweep_cmd->add_flag("--allow-negative", sweep_allow_negative,
                        "let generated functions take negative values");
    sweep_cmd->add_option("--out-witness", sweep_witness, "write the first witness here");

    auto* checks_cmd = app.add_subcommand("checks", "built-in identity and example checks");
    std::string checks_which;
    checks_cmd
        ->add_option("which", checks_which,
                     "identities | gap-sign | coefficient-bounds | indicator-cases | duplicate-vars")
        ->required();

    auto* apps_cmd = app.add_subcommand("apps", "application inequalities");
    std::string apps_which, apps_input;
    apps_cmd
        ->add_option("which", apps_which,
                     "bernstein | logconvex | kleitman | matrix | psd | ranking | exchangeable")
        ->required();
    apps_cmd->add_option("--input", apps_input, "input JSON file")->required();

    auto* replay_cmd = app.add_subcommand("replay", "re-evaluate a stored witness");
    std::string replay_file;
    replay_cmd->add_option("--witness", replay_file, "witness JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (certify_cmd->parsed())
            return run_certify(cert_m, cert_kind, cert_coeffs, cert_out, opts);
        if (sweep_cmd->parsed())
            return run_sweep(sweep_m, sweep_kind, sweep_shape, sweep_trials, sweep_seed,
                             sweep_allow_negative, sweep_function_mode, sweep_witness, opts);
        if (checks_cmd->parsed()) return run_checks(checks_which, opts);
        if (apps_cmd->parsed()) return run_apps(apps_which, apps_input, opts);
        if (replay_cmd->parsed()) return run_replay(replay_file, opts);
    } catch (const std::exception& e) {
        Report report;
        report.command = "error";
        report.outcome = Outcome::error;
        report.add_check({"command failed", e.what(), Outcome::error});
        emit(report, opts);
        return 2;
    }
    return 2;
}
