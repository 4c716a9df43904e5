#include "rank1/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "rank1/parallel.hpp"

namespace rank1 {
namespace ode {

namespace {

using C = std::complex<double>;

// Exponents are accepted onto the lambda lattice within this distance.
constexpr double kAnchorTol = 1e-9;
// Reported coefficient maps drop entries below this modulus.
constexpr double kReportPruneTol = 1e-14;
// Real sqrt(D) must stay below 1/2 by this margin, otherwise the slowest
// tail kernel sits on top of the resonance at sigma = 0.
constexpr double kRealMargin = 1e-6;
// Remainder sampling grid and the floor below which samples are left out of
// the least-squares fit.
constexpr double kSampleLo = 2.0;
constexpr double kSampleHi = 8.0;
constexpr int kSampleCount = 25;
constexpr double kFitFloor = 1e-280;

int count_letter(const Word& word, int letter, int from, int to) {
    if (from < 1)
        from = 1;
    if (to > static_cast<int>(word.size()))
        to = static_cast<int>(word.size());
    int count = 0;
    for (int pos = from; pos <= to; pos++)
        if (word[pos - 1] == letter)
            count++;
    return count;
}

// The engine always switches from finite to tail applications at
// floor((n-3)/2) + 1, independent of the regime; convergence of every tail
// in the supported regimes is checked term by term anyway.
int engine_switch_depth(int n) {
    return static_cast<int>(std::floor((n - 3) / 2.0)) + 1;
}

bool is_critical(const ODEParams& params) {
    return std::abs(params.D) <= kCriticalDTol;
}

// Pure Theta-seed of a word: the homogeneous pair attached to the word's
// level. In the repeated-root case the second scalar rides on t e^{lambda t}.
ExpPoly seed_poly(const ODEParams& params, const ThetaProvider& theta, const Word& word) {
    const auto [theta_minus, theta_plus] = theta(word);
    std::vector<ExpPolyTerm> raw;
    if (is_critical(params)) {
        raw.push_back({theta_minus, 0, params.lambda_minus});
        raw.push_back({theta_plus, 1, params.lambda_minus});
    } else {
        raw.push_back({theta_minus, 0, params.lambda_minus});
        raw.push_back({theta_plus, 0, params.lambda_plus});
    }
    return ExpPoly{std::move(raw)};
}

std::string format_term(const ExpPolyTerm& term) {
    std::ostringstream os;
    os << "(" << term.coeff.real() << (term.coeff.imag() < 0 ? "" : "+")
       << term.coeff.imag() << "i) t^" << term.tpow << " e^{("
       << term.exponent.real() << (term.exponent.imag() < 0 ? "" : "+")
       << term.exponent.imag() << "i) t}";
    return os.str();
}

std::optional<int> lattice_offset(C anchor, C exponent) {
    const C gap = anchor - exponent;
    if (std::abs(gap.imag()) > kAnchorTol)
        return std::nullopt;
    const double rounded = std::round(gap.real());
    if (std::abs(gap.real() - rounded) > kAnchorTol || rounded < -0.5)
        return std::nullopt;
    return static_cast<int>(rounded);
}

// One unit of work in the expansion: a chain of steps applied either to a
// word's Theta-seed or to its forcing (the latter with one extra solve step
// at the innermost position and a limit step at the switch position).
struct ChainJob {
    Word word;
    bool from_forcing = false;
};

ExpPoly run_chain(const ChainJob& job, const ODEParams& params, const ThetaProvider& theta,
                  int depth_cap, int ell_plus) {
    const int depth = static_cast<int>(job.word.size());
    ExpPoly acc;
    int ops;
    int split;
    if (job.from_forcing) {
        acc = model_forcing(params, theta, depth_cap, job.word);
        ops = depth + 1;
        split = depth - ell_plus + 1;  // limit at this position, tails before it
    } else {
        acc = seed_poly(params, theta, job.word);
        ops = depth;
        split = depth - ell_plus;  // tails up to here, finite after
    }
    for (int pos = ops; pos >= 1; pos--) {
        const int letter = pos <= depth ? job.word[pos - 1] : 2;
        JVariant variant;
        if (job.from_forcing)
            variant = pos > split    ? JVariant::finite
                      : pos == split ? JVariant::limit
                                     : JVariant::tail;
        else
            variant = pos <= split ? JVariant::tail : JVariant::finite;
        try {
            acc = expansion_step(letter, variant, acc, params);
        } catch (const DivergentIntegral& err) {
            // Tails only ever appear past the switch depth, where every
            // kernel decays in the supported regimes; reaching this point
            // means the bookkeeping mis-assigned a variant.
            throw std::logic_error(
                std::string("expand_iterated: divergent tail inside a refined chain: ") +
                err.what());
        }
    }
    double weight = std::pow(std::sqrt(2.0), delta2(job.word));
    const int extra = job.from_forcing ? depth - ell_plus : std::max(0, depth - ell_plus);
    if ((depth + extra) % 2 != 0)
        weight = -weight;
    return acc.scaled(C(weight, 0.0));
}

std::vector<Word> words_of_length(int length) {
    std::vector<Word> out;
    out.reserve(static_cast<std::size_t>(1) << length);
    for (std::uint64_t mask = 0; mask < (static_cast<std::uint64_t>(1) << length); mask++) {
        Word w(length);
        for (int j = 0; j < length; j++)
            w[j] = 2 + static_cast<int>((mask >> j) & 1u);
        out.push_back(std::move(w));
    }
    return out;
}

}  // namespace

int delta2(const Word& word, int from, int to) { return count_letter(word, 2, from, to); }
int delta3(const Word& word, int from, int to) { return count_letter(word, 3, from, to); }
int delta2(const Word& word) { return count_letter(word, 2, 1, static_cast<int>(word.size())); }
int delta3(const Word& word) { return count_letter(word, 3, 1, static_cast<int>(word.size())); }

std::string branch_name(Branch b) {
    switch (b) {
    case Branch::plus:
        return "plus";
    case Branch::minus:
        return "minus";
    case Branch::polynomial:
        return "polynomial";
    }
    throw std::logic_error("branch_name: unknown branch");
}

bool operator<(const CoeffKey& a, const CoeffKey& b) {
    if (a.branch != b.branch)
        return static_cast<int>(a.branch) < static_cast<int>(b.branch);
    return a.m < b.m;
}

bool operator==(const CoeffKey& a, const CoeffKey& b) {
    return a.branch == b.branch && a.m == b.m;
}

repn::Regime classify_regime(int n, double D) {
    if (std::abs(D) <= 1e-12)
        return repn::Regime::zero;
    if (D < 0.0)
        return repn::Regime::imaginary;
    const double r = std::sqrt(D);
    if (r <= (n - 3) / 2.0 + 1e-12)
        return repn::Regime::real_small;
    if (r < (n - 1) / 2.0 - 1e-12)
        return repn::Regime::real_mid;
    return repn::Regime::real_large;
}

SwitchDepths switch_depths(const ODEParams& params) {
    SwitchDepths out;
    const double re_sd = params.sqrt_D.real();
    out.theorem_ell_plus = static_cast<int>(std::floor((params.n - 3) / 2.0 + re_sd)) + 3;
    const double re_plus = params.lambda_plus.real();
    const double re_minus = params.lambda_minus.real();
    switch (classify_regime(params.n, params.D)) {
    case repn::Regime::imaginary:
    case repn::Regime::zero:
        out.ell_plus = engine_switch_depth(params.n);
        out.ell_minus = 0;
        break;
    case repn::Regime::real_small:
        // Both homogeneous branches survive long enough that each gets its
        // own switch depth.
        out.ell_minus = static_cast<int>(std::floor(params.n - 2 + re_minus)) + 1;
        out.ell_plus = static_cast<int>(std::floor(params.n - 2 + re_plus)) + 3;
        break;
    case repn::Regime::real_mid:
    case repn::Regime::real_large:
        out.ell_plus = static_cast<int>(std::floor(params.n - 2 + re_plus)) + 1;
        out.ell_minus = 0;
        break;
    }
    return out;
}

ExpPoly expansion_step(int letter, JVariant variant, const ExpPoly& P, const ODEParams& params) {
    if (letter != 2 && letter != 3)
        throw std::invalid_argument("expansion_step: letter must be 2 or 3");
    if (is_critical(params))
        return apply_J_critical(variant, letter, P, params).scaled(C(2.0, 0.0));
    const ExpPoly diff = apply_J(letter, JSign::plus, variant, P, params) -
                         apply_J(letter, JSign::minus, variant, P, params);
    return diff.scaled(C(-1.0, 0.0) / params.sqrt_D);
}

ExpPoly model_forcing(const ODEParams& params, const ThetaProvider& theta, int depth_cap,
                      const Word& word) {
    if (static_cast<int>(word.size()) >= depth_cap)
        throw std::invalid_argument("model_forcing: word at or past the truncation depth");
    Word child = word;
    child.push_back(2);
    ExpPoly two = model_solution(params, theta, depth_cap, child);
    child.back() = 3;
    ExpPoly three = model_solution(params, theta, depth_cap, child);
    return two.scaled(C(-std::sqrt(2.0), 0.0)) - three.shifted(C(-1.0, 0.0));
}

ExpPoly model_solution(const ODEParams& params, const ThetaProvider& theta, int depth_cap,
                       const Word& word) {
    ExpPoly seed = seed_poly(params, theta, word);
    if (static_cast<int>(word.size()) >= depth_cap)
        return seed;
    const ExpPoly forcing = model_forcing(params, theta, depth_cap, word);
    return seed + expansion_step(2, JVariant::finite, forcing, params);
}

ExpansionReport expand_iterated(const ODEParams& params, const ThetaProvider& theta, int ell) {
    if (!theta)
        throw std::invalid_argument("expand_iterated: missing Theta provider");
    const bool critical = is_critical(params);
    const double re_sd = params.sqrt_D.real();
    if (!critical && params.D > 0.0 && re_sd >= 0.5 - kRealMargin)
        throw std::invalid_argument(
            "expand_iterated: real sqrt(D) at or above 1/2 needs the two-sided scheme and is "
            "not supported");
    const int ell_plus = engine_switch_depth(params.n);
    if (ell <= ell_plus)
        throw std::invalid_argument("expand_iterated: depth must exceed the switch depth " +
                                    std::to_string(ell_plus));

    if (params.D < -kCriticalDTol) {
        // With sqrt(D) imaginary every resolvent factor 1/(2 sqrt(D) +- k)
        // met by the chains has modulus below 1; the expansion leans on that
        // bound, so verify it for the whole depth range.
        for (int k = 1; k <= 2 * ell + 2; k++) {
            const double lo = std::min(std::abs(2.0 * params.sqrt_D - C(k, 0.0)),
                                       std::abs(2.0 * params.sqrt_D + C(k, 0.0)));
            if (lo <= 1.0)
                throw std::logic_error("expand_iterated: resolvent factor bound failed");
        }
    }

    const int depth_cap = ell + 1;
    std::vector<ChainJob> jobs;
    for (int d = 1; d <= ell; d++)
        for (auto& w : words_of_length(d))
            jobs.push_back({std::move(w), false});
    for (int k = ell_plus; k <= ell; k++)
        for (auto& w : words_of_length(k))
            jobs.push_back({std::move(w), true});

    std::vector<ExpPoly> slots(jobs.size());
    std::exception_ptr failure;
    std::mutex failure_mutex;
    parallel_for(jobs.size(), [&](std::size_t idx) {
        try {
            slots[idx] = run_chain(jobs[idx], params, theta, depth_cap, ell_plus);
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
        }
    });
    if (failure)
        std::rethrow_exception(failure);

    ExpPoly expansion = seed_poly(params, theta, {});
    for (const ExpPoly& piece : slots)
        expansion += piece;

    // The remainder is exact for the truncated model: everything the finite
    // recursion produces that the expansion does not keep.  Its true terms
    // all sit at least ell - ell_plus + 1 lattice steps below the
    // homogeneous exponents (that many tail applications, each shifting by
    // at least one and contributing no boundary term); slower exponents can
    // only be cancellation residue of the subtraction and are dropped so
    // they cannot pollute the decay fit.
    const ExpPoly raw_remainder = model_solution(params, theta, depth_cap, {}) - expansion;
    const double slowest = std::max(params.lambda_plus.real(), params.lambda_minus.real()) -
                           (ell - ell_plus + 1) + 0.5;
    std::vector<ExpPolyTerm> kept_terms;
    for (const ExpPolyTerm& term : raw_remainder.terms())
        if (term.exponent.real() <= slowest)
            kept_terms.push_back(term);
    const ExpPoly remainder{std::move(kept_terms)};

    ExpansionReport report;
    report.ell = ell;
    report.ell_plus = ell_plus;
    try {
        report.coeffs = collect_coefficients(expansion, params);
    } catch (const std::invalid_argument& err) {
        throw std::logic_error(std::string("expand_iterated: expansion left the lattice: ") +
                               err.what());
    }
    for (auto it = report.coeffs.begin(); it != report.coeffs.end();) {
        if (std::abs(it->second) < kReportPruneTol)
            it = report.coeffs.erase(it);
        else
            ++it;
    }
    for (const auto& [key, value] : report.coeffs) {
        (void)value;
        if (key.m > 2 * ell)
            throw std::logic_error("expand_iterated: lattice offset exceeded 2 ell");
    }

    std::vector<double> xs;
    std::vector<double> ys;
    for (int j = 0; j < kSampleCount; j++) {
        const double t = kSampleLo + (kSampleHi - kSampleLo) * j / (kSampleCount - 1);
        const double a = std::abs(remainder.eval(t));
        report.remainder_samples.emplace_back(t, a);
        if (a >= kFitFloor) {
            xs.push_back(t);
            ys.push_back(std::log(a));
        }
    }
    if (xs.size() >= 2) {
        double mx = 0.0;
        double my = 0.0;
        for (std::size_t i = 0; i < xs.size(); i++) {
            mx += xs[i];
            my += ys[i];
        }
        mx /= static_cast<double>(xs.size());
        my /= static_cast<double>(xs.size());
        double sxx = 0.0;
        double sxy = 0.0;
        for (std::size_t i = 0; i < xs.size(); i++) {
            sxx += (xs[i] - mx) * (xs[i] - mx);
            sxy += (xs[i] - mx) * (ys[i] - my);
        }
        report.fitted_decay = sxy / sxx;
    }
    return report;
}

CoeffMap collect_coefficients(const ExpPoly& P, const ODEParams& params) {
    CoeffMap out;
    for (const ExpPolyTerm& term : P.terms()) {
        if (term.tpow >= 2)
            throw std::invalid_argument("collect_coefficients: t-power 2 or higher in " +
                                        format_term(term));
        std::optional<CoeffKey> key;
        if (term.tpow == 1) {
            if (auto m = lattice_offset(params.lambda_minus, term.exponent))
                key = CoeffKey{Branch::polynomial, *m};
            else if (auto mp = lattice_offset(params.lambda_plus, term.exponent))
                key = CoeffKey{Branch::polynomial, *mp};
        } else {
            if (auto m = lattice_offset(params.lambda_minus, term.exponent))
                key = CoeffKey{Branch::minus, *m};
            else if (auto mp = lattice_offset(params.lambda_plus, term.exponent))
                key = CoeffKey{Branch::plus, *mp};
        }
        if (!key)
            throw std::invalid_argument("collect_coefficients: exponent off the lattice in " +
                                        format_term(term));
        out[*key] += term.coeff;
    }
    return out;
}

ExpPoly rebuild_from_coefficients(const CoeffMap& coeffs, const ODEParams& params) {
    std::vector<ExpPolyTerm> raw;
    raw.reserve(coeffs.size());
    for (const auto& [key, value] : coeffs) {
        switch (key.branch) {
        case Branch::minus:
            raw.push_back({value, 0, params.lambda_minus - C(key.m, 0.0)});
            break;
        case Branch::plus:
            raw.push_back({value, 0, params.lambda_plus - C(key.m, 0.0)});
            break;
        case Branch::polynomial:
            raw.push_back({value, 1, params.lambda_minus - C(key.m, 0.0)});
            break;
        }
    }
    return ExpPoly{std::move(raw)};
}

ExpansionReport filter_coefficients(const ExpansionReport& report, double nu_gamma,
                                    const ODEParams& params) {
    const double rho = (params.n - 1) / 2.0;
    if (!(nu_gamma >= 0.0) || !(nu_gamma < rho))
        throw std::invalid_argument(
            "filter_coefficients: spectral parameter must lie in [0, (n-1)/2)");
    ExpansionReport out = report;
    const double re_sd = params.sqrt_D.real();
    const bool drop_all = re_sd >= rho;
    const double threshold = std::max(0.0, re_sd - nu_gamma);
    for (auto it = out.coeffs.begin(); it != out.coeffs.end();) {
        const bool plus = it->first.branch == Branch::plus;
        if (plus && (drop_all || it->first.m < threshold))
            it = out.coeffs.erase(it);
        else
            ++it;
    }
    return out;
}

std::pair<int, int> main_shifts(MainShiftVariant variant, int ell, int n,
                                std::complex<double> sqrt_D) {
    const double re_sd = sqrt_D.real();
    const bool integral =
        std::abs(sqrt_D.imag()) <= kAnchorTol && std::abs(re_sd - std::round(re_sd)) <= kAnchorTol;
    const int base = static_cast<int>(std::floor(re_sd));
    const int correction = integral ? 1 : 0;
    const int m_minus = ell - n - base - correction;
    if (variant == MainShiftVariant::pointwise_theorem)
        return {m_minus, m_minus};
    return {ell - n + base - correction, m_minus};
}

}  // namespace ode
}  // namespace rank1
