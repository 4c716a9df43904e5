// Command line front end over the rank-one toolkit: spectral parameters,
// branching tables, Weyl counting, ODE cross-checks, iterated expansions,
// summability probes, and a reproduce-all mode that reruns the acceptance
// suite end to end.
//
// Exit codes: 0 on success, 1 for malformed or inadmissible requests, 2 when
// an internal invariant fails; in that case the violated invariant's name and
// the offending values are embedded in the emitted report.

#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rank1/counting.hpp"
#include "rank1/exp_poly.hpp"
#include "rank1/expansion.hpp"
#include "rank1/group_ops.hpp"
#include "rank1/json_io.hpp"
#include "rank1/ode_solve.hpp"
#include "rank1/series.hpp"
#include "rank1/weights.hpp"

#include "acceptance_suite.hpp"

namespace {

using C = std::complex<double>;
using ordered = nlohmann::ordered_json;
using rank1::repn::Rat;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kViolation = 2;

struct Output {
    std::string format = "json";
    std::string path;
};

void add_output_options(CLI::App* cmd, Output& out, bool csv_supported) {
    auto* format = cmd->add_option("--output-format", out.format, "report format")
                       ->capture_default_str();
    if (csv_supported)
        format->check(CLI::IsMember({"json", "csv"}));
    else
        format->check(CLI::IsMember({"json"}));
    cmd->add_option("--output-path", out.path, "write the report here instead of stdout");
}

int emit(const Output& out, std::string text) {
    if (text.empty() || text.back() != '\n')
        text += '\n';
    if (out.path.empty()) {
        std::cout << text;
        return kOk;
    }
    std::ofstream file(out.path, std::ios::binary);
    if (!file) {
        std::cerr << "cannot open output path: " << out.path << "\n";
        return kUsage;
    }
    file << text;
    return kOk;
}

// Appends the violated-invariant block to an already serialized report and
// emits it with the failure exit code.
int emit_violation(const Output& out, const std::string& report_json,
                   const std::string& invariant, const ordered& values) {
    ordered doc = report_json.empty() ? ordered::object() : ordered::parse(report_json);
    ordered violated;
    violated["invariant"] = invariant;
    violated["values"] = values;
    doc["violated"] = violated;
    emit(out, doc.dump(2));
    return kViolation;
}

Rat parse_rat(const std::string& text) {
    const auto bad = [&] {
        return std::invalid_argument("not a rational: '" + text + "'");
    };
    const auto slash = text.find('/');
    try {
        const long long num = std::stoll(text.substr(0, slash));
        long long den = 1;
        if (slash != std::string::npos)
            den = std::stoll(text.substr(slash + 1));
        if (den == 0)
            throw bad();
        return Rat(num, den);
    } catch (const std::logic_error&) {
        throw bad();
    }
}

std::vector<Rat> parse_rat_list(const std::string& text) {
    std::vector<Rat> out;
    std::stringstream stream(text);
    std::string cell;
    while (std::getline(stream, cell, ','))
        out.push_back(parse_rat(cell));
    if (out.empty())
        throw std::invalid_argument("empty weight list");
    return out;
}

C parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    try {
        const double re = std::stod(text.substr(0, comma));
        const double im = comma == std::string::npos ? 0.0 : std::stod(text.substr(comma + 1));
        return C(re, im);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("not a complex number: '" + text + "'");
    }
}

ordered complex_value(C z) {
    ordered out;
    out["re"] = z.real();
    out["im"] = z.imag();
    return out;
}

// Every subcommand registers a runner here; main() executes the one the
// parser selected.
struct Driver {
    int exit_code = kOk;
    template <typename Fn>
    void install(CLI::App* cmd, Fn&& fn) {
        cmd->callback([this, fn = std::forward<Fn>(fn)] { exit_code = fn(); });
    }
};

// ---- verify-casimir ----

struct VerifyArgs {
    int n = 3;
    int trials = 50;
    std::uint64_t seed = 0;
    Output out;
};

int run_verify_casimir(const VerifyArgs& args) {
    const auto report = rank1::grp::verify_casimir_formula(args.n, args.trials, args.seed);
    const std::string json = rank1::io::verify_report_json(report);
    if (report.theorem2.max_rel_err <= 1e-4)
        return emit(args.out, json);
    ordered values;
    values["max_rel_err"] = report.theorem2.max_rel_err;
    values["tolerance"] = 1e-4;
    return emit_violation(args.out, json, "theorem2.max_rel_err <= 1e-4", values);
}

// ---- spectrum ----

struct SpectrumArgs {
    std::string family = "principal";
    int n = 3;
    std::string eta;
    std::string s;
    std::string nu;
    int m = 1;
    bool m_given = false;
    std::string k_eta;
    Output out;
};

int run_spectrum(const SpectrumArgs& args) {
    const auto eta = rank1::repn::make_weight(args.n - 1, parse_rat_list(args.eta));
    rank1::repn::SeriesParam p;
    if (args.family == "principal") {
        p = rank1::repn::principal_series(args.n, eta, args.s.empty() ? Rat(0) : parse_rat(args.s));
    } else if (args.family == "complementary") {
        if (args.nu.empty())
            throw std::invalid_argument("complementary family needs --nu");
        p = rank1::repn::complementary_series(args.n, eta, parse_rat(args.nu));
    } else if (args.family == "endpoint") {
        if (!args.m_given)
            throw std::invalid_argument("endpoint family needs --m");
        p = rank1::repn::endpoint_series(args.n, eta, args.m);
    } else {
        p = args.s.empty() ? rank1::repn::discrete_series(args.n, eta)
                           : rank1::repn::discrete_series(args.n, eta, parse_rat(args.s));
    }
    const auto k_side =
        args.k_eta.empty() ? eta : rank1::repn::make_weight(args.n - 1, parse_rat_list(args.k_eta));
    return emit(args.out, rank1::io::spectral_datum_json(rank1::repn::spectral_datum(p, k_side)));
}

// ---- branch ----

struct BranchArgs {
    int n = 4;
    std::string weight;
    Output out;
};

int run_branch(const BranchArgs& args) {
    const auto tau = rank1::repn::make_weight(args.n, parse_rat_list(args.weight));
    return emit(args.out, rank1::io::weight_list_json(rank1::repn::branch_K_to_M(tau, args.n)));
}

// ---- weyl-count ----

struct WeylCountArgs {
    int n = 3;
    double w_min = 100.0;
    double w_max = 10000.0;
    int points = 7;
    long long mult_bound = 1;
    Output out;
};

int run_weyl_count(const WeylCountArgs& args) {
    if (args.points < 4)
        throw std::invalid_argument("need at least 4 grid points");
    if (!(0.0 < args.w_min && args.w_min < args.w_max))
        throw std::invalid_argument("need 0 < w-min < w-max");
    std::vector<double> thresholds(args.points);
    for (int k = 0; k < args.points; ++k)
        thresholds[k] = args.w_min * std::pow(args.w_max / args.w_min,
                                              static_cast<double>(k) / (args.points - 1));
    const auto report = rank1::count::branching_count_S(args.n, thresholds, args.mult_bound);
    return emit(args.out, args.out.format == "csv" ? rank1::io::count_report_csv(report)
                                                   : rank1::io::count_report_json(report));
}

// ---- ode-check ----

struct OdeCheckArgs {
    int n = 3;
    double D = -1.0;
    std::string y0 = "1";
    std::string y0p = "0";
    std::vector<std::string> terms;
    Output out;
};

rank1::ode::ExpPoly parse_forcing(const std::vector<std::string>& specs) {
    using rank1::ode::ExpPoly;
    if (specs.empty())
        return ExpPoly::monomial(C(1.0), 0, C(-0.75));
    ExpPoly forcing = ExpPoly::zero();
    for (const std::string& spec : specs) {
        std::vector<double> fields;
        std::stringstream stream(spec);
        std::string cell;
        while (std::getline(stream, cell, ','))
            try {
                fields.push_back(std::stod(cell));
            } catch (const std::logic_error&) {
                throw std::invalid_argument("bad forcing field '" + cell + "'");
            }
        if (fields.size() != 5)
            throw std::invalid_argument(
                "forcing term wants 5 fields c_re,c_im,tpow,x_re,x_im, got '" + spec + "'");
        const int tpow = static_cast<int>(fields[2]);
        if (tpow < 0 || tpow != fields[2])
            throw std::invalid_argument("forcing t-power must be a nonnegative integer");
        forcing += ExpPoly::monomial(C(fields[0], fields[1]), tpow, C(fields[3], fields[4]));
    }
    return forcing;
}

int run_ode_check(const OdeCheckArgs& args) {
    const double rho2 = (args.n - 1) * (args.n - 1) / 4.0;
    const auto params = rank1::ode::make_ode_params(args.n, args.D - rho2, Rat(0),
                                                    parse_complex(args.y0),
                                                    parse_complex(args.y0p));
    const auto forcing = parse_forcing(args.terms);
    const auto y = rank1::ode::solve_ode_explicit(params, forcing);
    const double residual =
        rank1::ode::ode_residual(params, y, forcing).max_abs_coeff();
    const int steps = 100000;
    const double t_end = 10.0;
    double diff = 0.0;
    const auto callback = [&](double t) { return forcing.eval(t); };
    for (const auto& [t, value] : rank1::ode::solve_ode_numeric(params, callback, t_end, steps))
        diff = std::max(diff, std::abs(value - y.eval(t)));

    ordered doc;
    doc["n"] = args.n;
    doc["D"] = args.D;
    doc["y0"] = complex_value(params.I0);
    doc["y0p"] = complex_value(params.I0_prime);
    doc["forcing_terms"] = forcing.size();
    doc["solution_terms"] = y.size();
    doc["steps"] = steps;
    doc["t_end"] = t_end;
    doc["max_abs_diff"] = diff;
    doc["residual"] = residual;
    const bool ok = diff <= 1e-6 && residual <= 1e-12;
    doc["ok"] = ok;
    if (ok)
        return emit(args.out, doc.dump(2));
    ordered values;
    values["max_abs_diff"] = diff;
    values["diff_tolerance"] = 1e-6;
    values["residual"] = residual;
    values["residual_tolerance"] = 1e-12;
    return emit_violation(args.out, doc.dump(), "explicit solution matches the RK4 oracle",
                          values);
}

// ---- expand ----

struct ExpandArgs {
    int n = 3;
    double D = -1.0;
    int ell = 3;
    double theta_ratio = 0.5;
    double nu = -1.0;
    bool nu_given = false;
    Output out;
};

int run_expand(const ExpandArgs& args) {
    const double rho2 = (args.n - 1) * (args.n - 1) / 4.0;
    const auto params =
        rank1::ode::make_ode_params(args.n, args.D - rho2, Rat(0), C(0.0), C(0.0));
    // Synthetic geometrically decaying coefficient family, letter-sensitive
    // so both branches and both letters are exercised.
    const double ratio = args.theta_ratio;
    const rank1::ode::ThetaProvider theta = [ratio](const rank1::ode::Word& w) {
        const double base = std::pow(ratio, static_cast<double>(w.size()));
        const C tm = base * C(1.0 + 0.1 * rank1::ode::delta2(w), 0.0);
        const C tp = base * C(0.4 + 0.05 * rank1::ode::delta3(w), -0.15);
        return std::make_pair(tm, tp);
    };
    try {
        auto report = rank1::ode::expand_iterated(params, theta, args.ell);
        if (args.nu_given)
            report = rank1::ode::filter_coefficients(report, args.nu, params);
        return emit(args.out, args.out.format == "csv"
                                  ? rank1::io::remainder_csv(report)
                                  : rank1::io::expansion_report_json(report));
    } catch (const std::logic_error& e) {
        if (dynamic_cast<const std::invalid_argument*>(&e) != nullptr)
            throw;
        ordered values;
        values["message"] = e.what();
        return emit_violation(args.out, "", "expansion stays on the exponent lattice", values);
    }
}

// ---- summability ----

struct SummabilityArgs {
    int alpha = 2;
    double s = 0.0;
    int shells = 30;
    Output out;
};

int run_summability(const SummabilityArgs& args) {
    if (args.shells < 3 || args.shells > 60)
        throw std::invalid_argument("shells must lie in [3, 60]");
    if (args.alpha < 1 || args.alpha * (args.shells - 1) > 62)
        throw std::invalid_argument("alpha * (shells - 1) must stay below 63");
    rank1::count::SyntheticSpectrum spec;
    for (int j = 0; j < args.shells; ++j)
        spec.entries.push_back({1.0 - std::pow(2.0, j), Rat(0), 1LL << (args.alpha * j)});
    const auto sums = rank1::count::summability_partial_sums(spec, args.s, args.shells);
    const double tail = sums[args.shells - 1] - sums[args.shells - 2];
    const double before = sums[args.shells - 2] - sums[args.shells - 3];
    const double ratio = before > 0.0 ? tail / before : 0.0;
    const bool bounded = ratio < 1.0;
    if (args.out.format == "csv") {
        std::string csv = "shell,partial_sum\n";
        for (int j = 0; j < args.shells; ++j)
            csv += std::to_string(j) + "," + ordered(sums[j]).dump() + "\n";
        return emit(args.out, csv);
    }
    ordered doc;
    doc["alpha"] = args.alpha;
    doc["s"] = args.s;
    doc["shells"] = args.shells;
    doc["final_sum"] = sums[args.shells - 1];
    doc["increment_ratio"] = ratio;
    doc["bounded"] = bounded;
    return emit(args.out, doc.dump(2));
}

// ---- reproduce-all ----

struct ReproduceArgs {
    Output out;
};

int run_reproduce_all(const ReproduceArgs& args) {
    const auto results =
        acceptance::run_acceptance_suite([](const acceptance::CriterionResult& r) {
            std::fprintf(stderr, "[%s] %d %s (%.2fs) %s\n", r.pass ? "PASS" : "FAIL", r.index,
                         r.name.c_str(), r.seconds, r.detail.c_str());
        });
    int failed = 0;
    for (const auto& r : results)
        failed += r.pass ? 0 : 1;
    if (args.out.format == "csv") {
        std::string csv = "index,name,pass,seconds\n";
        for (const auto& r : results)
            csv += std::to_string(r.index) + "," + r.name + "," +
                   (r.pass ? "true" : "false") + "," + ordered(r.seconds).dump() + "\n";
        const int rc = emit(args.out, csv);
        return rc != kOk ? rc : (failed == 0 ? kOk : kViolation);
    }
    ordered doc;
    ordered criteria = ordered::array();
    for (const auto& r : results) {
        ordered row;
        row["index"] = r.index;
        row["name"] = r.name;
        row["pass"] = r.pass;
        row["seconds"] = r.seconds;
        row["budget_seconds"] = r.budget_seconds;
        row["detail"] = r.detail;
        criteria.push_back(row);
    }
    doc["criteria"] = criteria;
    doc["passed"] = static_cast<int>(results.size()) - failed;
    doc["failed"] = failed;
    const int rc = emit(args.out, doc.dump(2));
    return rc != kOk ? rc : (failed == 0 ? kOk : kViolation);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank-one spectral toolkit"};
    app.require_subcommand(1);
    Driver driver;

    VerifyArgs verify;
    auto* cmd = app.add_subcommand("verify-casimir",
                                   "Monte Carlo check of the Casimir differential identity");
    cmd->add_option("--n", verify.n, "ambient dimension")->required()->check(CLI::Range(2, 12));
    cmd->add_option("--trials", verify.trials, "random pairs")->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", verify.seed, "RNG seed")->capture_default_str();
    add_output_options(cmd, verify.out, false);
    driver.install(cmd, [&verify] { return run_verify_casimir(verify); });

    SpectrumArgs spectrum;
    cmd = app.add_subcommand("spectrum", "spectral datum for one series point");
    cmd->add_option("--family", spectrum.family, "series family")
        ->check(CLI::IsMember({"principal", "complementary", "endpoint", "discrete"}))
        ->capture_default_str();
    cmd->add_option("--n", spectrum.n, "ambient dimension")->required()->check(CLI::Range(3, 12));
    cmd->add_option("--eta", spectrum.eta, "inducing weight entries, e.g. 1,0 or 3/2,1/2")
        ->required();
    cmd->add_option("--s", spectrum.s, "principal or discrete parameter (rational)");
    cmd->add_option("--nu", spectrum.nu, "complementary parameter (rational)");
    cmd->add_option("--m", spectrum.m, "endpoint index")
        ->each([&spectrum](const std::string&) { spectrum.m_given = true; });
    cmd->add_option("--k-eta", spectrum.k_eta, "weight met in the K-decomposition (default --eta)");
    add_output_options(cmd, spectrum.out, false);
    driver.install(cmd, [&spectrum] { return run_spectrum(spectrum); });

    BranchArgs branch;
    cmd = app.add_subcommand("branch", "restriction of one K-type to SO(n-1)");
    cmd->add_option("--n", branch.n, "K is SO(n)")->required()->check(CLI::Range(3, 12));
    cmd->add_option("--weight", branch.weight, "highest weight entries, e.g. 1,0")->required();
    add_output_options(cmd, branch.out, false);
    driver.install(cmd, [&branch] { return run_branch(branch); });

    WeylCountArgs weyl;
    cmd = app.add_subcommand("weyl-count", "counting function S(W) with growth-exponent fit");
    cmd->add_option("--n", weyl.n, "K is SO(n)")->required()->check(CLI::Range(3, 12));
    cmd->add_option("--w-min", weyl.w_min, "lowest threshold")->capture_default_str();
    cmd->add_option("--w-max", weyl.w_max, "highest threshold")->capture_default_str();
    cmd->add_option("--points", weyl.points, "log-grid size")->capture_default_str();
    cmd->add_option("--mult-bound", weyl.mult_bound, "uniform multiplicity bound")
        ->capture_default_str()->check(CLI::PositiveNumber);
    add_output_options(cmd, weyl.out, true);
    driver.install(cmd, [&weyl] { return run_weyl_count(weyl); });

    OdeCheckArgs ode;
    cmd = app.add_subcommand("ode-check", "explicit radial solution against the RK4 oracle");
    cmd->add_option("--n", ode.n, "ambient dimension")->required()->check(CLI::Range(2, 12));
    cmd->add_option("--D", ode.D, "discriminant")->required();
    cmd->add_option("--y0", ode.y0, "initial value, re[,im]")->capture_default_str();
    cmd->add_option("--y0p", ode.y0p, "initial derivative, re[,im]")->capture_default_str();
    cmd->add_option("--term", ode.terms,
                    "forcing term c_re,c_im,tpow,x_re,x_im (repeatable; default 1,0,0,-0.75,0)");
    add_output_options(cmd, ode.out, false);
    driver.install(cmd, [&ode] { return run_ode_check(ode); });

    ExpandArgs expand;
    cmd = app.add_subcommand("expand", "iterated expansion with a synthetic coefficient family");
    cmd->add_option("--n", expand.n, "ambient dimension")->required()->check(CLI::Range(2, 12));
    cmd->add_option("--D", expand.D, "discriminant")->required();
    cmd->add_option("--ell", expand.ell, "expansion depth")->required()->check(CLI::Range(1, 12));
    cmd->add_option("--theta-ratio", expand.theta_ratio, "geometric decay of the coefficients")
        ->capture_default_str()->check(CLI::Range(0.01, 0.95));
    cmd->add_option("--nu", expand.nu, "apply the visibility filter at this spectral gap")
        ->each([&expand](const std::string&) { expand.nu_given = true; });
    add_output_options(cmd, expand.out, true);
    driver.install(cmd, [&expand] { return run_expand(expand); });

    SummabilityArgs summ;
    cmd = app.add_subcommand("summability", "dyadic partial sums of a planted spectrum");
    cmd->add_option("--alpha", summ.alpha, "planted growth exponent")->capture_default_str();
    cmd->add_option("--s", summ.s, "summability exponent")->required();
    cmd->add_option("--shells", summ.shells, "dyadic shells")->capture_default_str();
    add_output_options(cmd, summ.out, true);
    driver.install(cmd, [&summ] { return run_summability(summ); });

    ReproduceArgs repro;
    cmd = app.add_subcommand("reproduce-all", "rerun the full acceptance suite");
    add_output_options(cmd, repro.out, true);
    driver.install(cmd, [&repro] { return run_reproduce_all(repro); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid request: " << e.what() << "\n";
        return kUsage;
    } catch (const std::logic_error& e) {
        std::cerr << "internal invariant violated: " << e.what() << "\n";
        return kViolation;
    }
    return driver.exit_code;
}
