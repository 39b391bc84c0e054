#include "meixner/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <sstream>

#include "meixner/chaos.hpp"
#include "meixner/chaos_exact.hpp"
#include "meixner/dist3.hpp"
#include "meixner/tensor_io.hpp"
#include "meixner/verify.hpp"

namespace meixner {

namespace {

constexpr const char* kSchemaNote =
    "Tensor JSON schema: {\"dimension\": d, \"alpha\": [{\"index\": [i,j,k], "
    "\"value\": x}, ...], \"beta\": [[...]] (optional, default identity), "
    "\"mean\": [...] (optional, default zeros)}. Indices are 0-based; NaN/Inf "
    "are rejected.";

std::vector<double> parse_csv_doubles(const std::string& s, std::size_t expect,
                                      const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw UsageError(what + ": cannot parse '" + tok + "' as a number");
        }
    }
    if (expect != 0 && out.size() != expect)
        throw UsageError(what + ": expected " + std::to_string(expect) +
                         " comma-separated values");
    return out;
}

std::vector<int> parse_csv_ints(const std::string& s, const std::string& what) {
    std::vector<int> out;
    for (double v : parse_csv_doubles(s, 0, what)) {
        if (v != std::floor(v))
            throw UsageError(what + ": expected integers");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

PivotPolicy parse_pivot(const std::string& s) {
    if (s == "lowest") return PivotPolicy::LowestIndex;
    if (s == "highest") return PivotPolicy::HighestCount;
    if (s == "compare") return PivotPolicy::AllAndCompare;
    throw UsageError("--pivot must be lowest|highest|compare");
}

void emit_error(std::ostream& err, const std::string& kind, const std::string& msg) {
    err << Json{{"error", {{"kind", kind}, {"message", msg}}}}.dump() << "\n";
}

struct Options {
    std::string input;
    std::string out_path;
    std::string index_csv;
    std::string at_csv;
    std::string case2_csv;
    std::string format = "json";
    std::string mode = "float";
    std::string check = "axioms";
    std::string profile = "full";
    std::string pivot = "lowest";
    double a = 0.0;
    double tol = 1e-9;
    int max_degree = -1;
    int degree = 4;
    int degree_cap = 16;
    std::uint64_t n = 0;
    std::uint64_t seed = 42;
};

int cmd_validate(const Options& opt, std::ostream& out) {
    const MeixnerSpec spec = load_spec(opt.input);
    const LccReport lcc = validate_lcc(spec);
    const ObstructionReport obs = necessary_conditions(spec.alpha, opt.tol);
    Json j{{"lcc", lcc_report_to_json(lcc)},
           {"obstructions", obstruction_report_to_json(obs)},
           {"pass", lcc.pass() && obs.pass}};
    out << j.dump(2) << "\n";
    return j["pass"].get<bool>() ? 0 : 1;
}

int cmd_classify(const Options& opt, std::ostream& out) {
    const MeixnerSpec spec = load_spec(opt.input);
    const Classification3 cls = classify(spec.alpha, opt.tol);
    out << classification_to_json(cls).dump(2) << "\n";
    return 0;
}

int cmd_moments(const Options& opt, std::ostream& out) {
    const MeixnerSpec spec = load_spec(opt.input);
    MomentTable tbl(spec, parse_pivot(opt.pivot), 1e-9, opt.degree_cap);
    std::vector<MultiIndex> indices;
    if (!opt.index_csv.empty()) {
        auto counts = parse_csv_ints(opt.index_csv, "--index");
        if (static_cast<int>(counts.size()) != spec.dimension())
            throw UsageError("--index needs one count per coordinate");
        indices.emplace_back(std::move(counts));
    } else if (opt.max_degree >= 0) {
        indices = multi_indices_up_to(spec.dimension(), opt.max_degree);
    } else {
        throw UsageError("moments: provide --index or --max-degree");
    }

    Json rows = Json::array();
    for (const MultiIndex& idx : indices) {
        const double v = tbl.moment(idx);
        Json row{{"index", idx.counts()}, {"value", v}};
        if (opt.format == "jsonl")
            out << row.dump() << "\n";
        else
            rows.push_back(row);
    }
    if (opt.format != "jsonl") out << rows.dump(2) << "\n";
    return 0;
}

int cmd_laplace(const Options& opt, std::ostream& out) {
    const auto s = parse_csv_doubles(opt.at_csv, 3, "--at");
    const CanonicalGamma3 g(opt.a);
    const Point3 pt(s[0], s[1], s[2]);
    Json j{{"a", opt.a}, {"at", s}};
    if (in_laplace_domain(opt.a, pt)) {
        j["in_domain"] = true;
        j["value"] = laplace_closed_form(g, pt);
    } else {
        j["in_domain"] = false;
        j["value"] = nullptr;
    }
    out << j.dump(2) << "\n";
    return 0;
}

int cmd_sample(const Options& opt, std::ostream& out) {
    if (opt.n == 0) throw UsageError("sample: provide --n > 0");
    const bool case2 = !opt.case2_csv.empty();
    if (case2 == (opt.a != 0.0))
        throw UsageError("sample: provide exactly one of --a or --case2");

    std::array<Marginal1D, 3> comps{};
    if (case2) {
        const auto bs = parse_csv_doubles(opt.case2_csv, 3, "--case2");
        for (int k = 0; k < 3; ++k) comps[k] = marginal_params_1d(bs[k]);
    }
    const bool surface = !case2 && opt.a == 1.0;
    CanonicalGamma3 g(case2 || surface ? 1.0 : opt.a); // validates range

    auto emit = [&](const Point3& x) {
        if (opt.format == "csv") {
            out << x(0) << "," << x(1) << "," << x(2) << "\n";
        } else {
            out << Json::array({x(0), x(1), x(2)}).dump() << "\n";
        }
    };
    const Mat identity = Mat::Identity(3, 3);
    for (std::uint64_t k = 0; k < opt.n; ++k) {
        RngStream rng(opt.seed, k);
        if (case2)
            emit(sample_case2_one(comps, identity, rng));
        else if (surface)
            emit(sample_surface_one(1.0, rng));
        else
            emit(sample_interior_one(g, rng));
    }
    return 0;
}

int cmd_oracle(const Options& opt, std::ostream& out) {
    const MeixnerSpec spec = load_spec(opt.input);
    const int N = opt.degree;
    Json j{{"degree", N}, {"mode", opt.mode}, {"check", opt.check}};

    if (opt.mode == "exact") {
        RationalMomentTable tbl(spec);
        const ExactChaosBasis basis = build_chaos_basis_exact(tbl, N);
        const ExactOperatorSet ops = build_operators_exact(basis, tbl);
        if (opt.check == "axioms") {
            const ExactAxiomReport rep = check_axioms_exact(ops, N - 2);
            j["residuals"] = {
                {"minus_minus", ScalarOps<Rational>::to_double(rep.minus_minus)},
                {"minus_zero", ScalarOps<Rational>::to_double(rep.minus_zero)},
                {"zero_zero", ScalarOps<Rational>::to_double(rep.zero_zero)},
                {"zero_plus", ScalarOps<Rational>::to_double(rep.zero_plus)},
                {"plus_plus", ScalarOps<Rational>::to_double(rep.plus_plus)},
                {"semi_quantum", ScalarOps<Rational>::to_double(rep.semi_quantum)}};
            j["exact_zero"] = rep.all_zero();
        } else if (opt.check == "meixner1") {
            const ExactMeixner1Fit fit = check_meixner1_exact(ops, N - 1);
            double worst = 0.0;
            const int d = spec.dimension();
            for (int i = 0; i < d; ++i)
                for (int jj = 0; jj < d; ++jj)
                    for (int k = 0; k < d; ++k)
                        worst = std::max(worst,
                                         std::abs(ScalarOps<Rational>::to_double(
                                                      fit.b[i][jj][k]) -
                                                  spec.alpha(i, jj, k)));
            j["max_coefficient_error"] = worst;
            j["residual_exactly_zero"] = fit.exact_fit();
        } else if (opt.check == "meixner2") {
            const ExactMeixner2Fit fit = check_meixner2_exact(ops, N - 2);
            j["max_abs_coefficient"] =
                ScalarOps<Rational>::to_double(fit.max_abs_coefficient);
            j["residual_exactly_zero"] = fit.exact_fit();
        } else {
            throw UsageError("--check must be axioms|meixner1|meixner2");
        }
        out << j.dump(2) << "\n";
        return 0;
    }
    if (opt.mode != "float") throw UsageError("--mode must be float|exact");

    MomentTable tbl(spec);
    const ChaosBasis basis = build_chaos_basis(tbl, N);
    const OperatorSet ops = build_operators(basis, tbl);
    if (opt.check == "axioms") {
        const AxiomReport rep = check_axioms(ops, N - 2);
        j["residuals"] = {{"minus_minus", rep.minus_minus},
                          {"minus_zero", rep.minus_zero},
                          {"zero_zero", rep.zero_zero},
                          {"zero_plus", rep.zero_plus},
                          {"plus_plus", rep.plus_plus},
                          {"semi_quantum", rep.semi_quantum}};
        j["max_residual"] = rep.max();
        j["off_band_leakage"] = off_band_leakage(ops);
    } else if (opt.check == "meixner1") {
        const Meixner1Fit fit = check_meixner1(ops, N - 1);
        const int d = spec.dimension();
        double worst = 0.0;
        Json coeffs = Json::array();
        for (int i = 0; i < d; ++i)
            for (int jj = 0; jj < d; ++jj) {
                Json row{{"i", i},
                         {"j", jj},
                         {"c", fit.c(i, jj)},
                         {"residual", fit.residual(i, jj)}};
                Json b = Json::array();
                for (int k = 0; k < d; ++k) {
                    b.push_back(fit.b[i](jj, k));
                    worst = std::max(worst, std::abs(fit.b[i](jj, k) -
                                                     spec.alpha(i, jj, k)));
                }
                row["b"] = b;
                coeffs.push_back(row);
            }
        j["fits"] = coeffs;
        j["max_residual"] = fit.max_residual;
        j["max_coefficient_error"] = worst;
    } else if (opt.check == "meixner2") {
        const Meixner2Fit fit = check_meixner2(ops, N - 2);
        j["max_abs_coefficient"] = fit.max_abs_coefficient;
        j["max_residual"] = fit.max_residual;
    } else {
        throw UsageError("--check must be axioms|meixner1|meixner2");
    }
    out << j.dump(2) << "\n";
    return 0;
}

int cmd_verify(const Options& opt, std::ostream& out) {
    if (opt.input.empty() && !(opt.a > 0.0))
        throw UsageError("verify: provide --input or --a");
    if (!opt.input.empty() && opt.a > 0.0)
        throw UsageError("verify: --input and --a are mutually exclusive");
    const MeixnerSpec spec = opt.input.empty()
                                 ? MeixnerSpec(canonical_tensor(opt.a))
                                 : load_spec(opt.input);

    VerifyConfig config;
    config.seed = opt.seed;
    config.profile = opt.profile == "quick" ? VerifyConfig::Profile::Quick
                                            : VerifyConfig::Profile::Full;
    const VerifyReport report = full_suite(spec, config);
    for (const VerifyCheck& c : report.checks) {
        if (c.skipped) {
            out << "SKIP " << c.name << " (" << c.skip_reason << ")\n";
        } else {
            out << (c.pass ? "PASS " : "FAIL ") << c.name
                << " observed=" << c.observed << " tol=" << c.tolerance << " ("
                << c.wall_ms << " ms)\n";
        }
    }
    out << (report.pass() ? "OVERALL PASS" : "OVERALL FAIL") << "\n";
    if (!opt.out_path.empty()) {
        std::ofstream f(opt.out_path);
        if (!f) throw InputError("cannot write report to " + opt.out_path);
        f << verify_report_to_json(report).dump(2) << "\n";
    }
    return report.pass() ? 0 : 1;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"Commutator-coefficient toolkit for 1-Meixner random vectors"};
    app.footer(kSchemaNote);
    app.require_subcommand(1);
    Options opt;

    auto* validate = app.add_subcommand(
        "validate", "consistency checks and integrability obstructions");
    validate->add_option("--input", opt.input, "tensor JSON file")->required();
    validate->add_option("--tol", opt.tol, "obstruction tolerance");

    auto* classify_cmd =
        app.add_subcommand("classify", "d=3 dichotomy: cone law or product law");
    classify_cmd->add_option("--input", opt.input, "tensor JSON file")->required();
    classify_cmd->add_option("--tol", opt.tol, "classification tolerance");

    auto* moments = app.add_subcommand("moments", "exact joint moments E[X^i]");
    moments->add_option("--input", opt.input, "tensor JSON file")->required();
    moments->add_option("--index", opt.index_csv, "one multi-index, e.g. 0,0,3");
    moments->add_option("--max-degree", opt.max_degree,
                        "emit every moment up to this total degree");
    moments->add_option("--format", opt.format, "json|jsonl");
    moments->add_option("--pivot", opt.pivot, "lowest|highest|compare");
    moments->add_option("--degree-cap", opt.degree_cap, "recursion degree cap");

    auto* laplace =
        app.add_subcommand("laplace", "closed-form Laplace transform of the cone law");
    laplace->add_option("--a", opt.a, "canonical parameter in (0,1]")->required();
    laplace->add_option("--at", opt.at_csv, "evaluation point s1,s2,s3")->required();

    auto* sample = app.add_subcommand("sample", "draw from the classified laws");
    sample->add_option("--a", opt.a, "canonical parameter in (0,1]");
    sample->add_option("--case2", opt.case2_csv,
                       "three per-component parameters b1,b2,b3");
    sample->add_option("--n", opt.n, "number of draws")->required();
    sample->add_option("--seed", opt.seed, "RNG seed (default 42)");
    sample->add_option("--format", opt.format, "jsonl|csv");

    auto* oracle = app.add_subcommand(
        "oracle", "moment-driven operator reconstruction and residuals");
    oracle->add_option("--input", opt.input, "tensor JSON file")->required();
    oracle->add_option("--degree", opt.degree, "truncation degree N");
    oracle->add_option("--mode", opt.mode, "float|exact");
    oracle->add_option("--check", opt.check, "axioms|meixner1|meixner2");

    auto* verify = app.add_subcommand("verify", "full cross-module verification");
    verify->add_option("--input", opt.input, "tensor JSON file");
    verify->add_option("--a", opt.a, "canonical parameter for a built-in tensor");
    verify->add_option("--profile", opt.profile, "quick|full");
    verify->add_option("--seed", opt.seed, "RNG seed (default 42)");
    verify->add_option("--out", opt.out_path, "write the report JSON here");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help() << "\n";
            return 0;
        }
        emit_error(err, "UsageError", e.what());
        return 2;
    }

    try {
        if (validate->parsed()) return cmd_validate(opt, out);
        if (classify_cmd->parsed()) return cmd_classify(opt, out);
        if (moments->parsed()) return cmd_moments(opt, out);
        if (laplace->parsed()) return cmd_laplace(opt, out);
        if (sample->parsed()) return cmd_sample(opt, out);
        if (oracle->parsed()) return cmd_oracle(opt, out);
        if (verify->parsed()) return cmd_verify(opt, out);
        emit_error(err, "UsageError", "no subcommand given");
        return 2;
    } catch (const UsageError& e) {
        emit_error(err, e.kind(), e.what());
        return 2;
    } catch (const Error& e) {
        emit_error(err, e.kind(), e.what());
        return 3;
    } catch (const std::exception& e) {
        emit_error(err, "InternalError", e.what());
        return 3;
    }
}

} // namespace meixner
