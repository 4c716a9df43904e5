#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "rank1/expansion.hpp"
#include "rank1/ode_solve.hpp"

using rank1::ode::Branch;
using rank1::ode::CoeffKey;
using rank1::ode::CoeffMap;
using rank1::ode::ExpansionReport;
using rank1::ode::ExpPoly;
using rank1::ode::ExpPolyTerm;
using rank1::ode::JVariant;
using rank1::ode::ODEParams;
using rank1::ode::ThetaProvider;
using rank1::ode::Word;
using C = std::complex<double>;

namespace {

// mu chosen so that the discriminant comes out as requested: with varpi = 0,
// mu = D - rho^2 makes varpi - mu equal rho^2 - D.
ODEParams params_with_D(int n, double D) {
    const double rho = (n - 1) / 2.0;
    return rank1::ode::make_ode_params(n, D - rho * rho, rank1::repn::Rat(0), C(0.0, 0.0),
                                       C(0.0, 0.0));
}

double coeff_distance(const ExpPoly& a, const ExpPoly& b) {
    double worst = 0.0;
    const ExpPoly diff = a - b;
    for (const ExpPolyTerm& term : diff.terms())
        worst = std::max(worst, std::abs(term.coeff));
    return worst;
}

std::vector<Word> words_of_length(int length) {
    std::vector<Word> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << length); mask++) {
        Word w(length);
        for (int j = 0; j < length; j++)
            w[j] = 2 + int((mask >> j) & 1u);
        out.push_back(std::move(w));
    }
    return out;
}

// Deterministic word-dependent scalars, decaying geometrically in depth so
// the truncated model converges quickly.
ThetaProvider geometric_theta() {
    return [](const Word& w) {
        const double base = std::pow(0.5, double(w.size()));
        const C tm = base * C(1.0 + 0.1 * rank1::ode::delta2(w), 0.0);
        const C tp = base * C(0.4 + 0.05 * rank1::ode::delta3(w), -0.15);
        return std::make_pair(tm, tp);
    };
}

// Remainder of the truncated model assembled directly: for every word of
// length ell, the forcing is pushed through the full chain with tails at the
// outer ell - ell_plus + 1 positions and finite steps inside.
ExpPoly direct_tail_remainder(const ODEParams& q, const ThetaProvider& theta, int ell,
                              int ell_plus) {
    const int cap = ell + 1;
    const int split = ell - ell_plus + 1;
    ExpPoly total;
    for (const Word& w : words_of_length(ell)) {
        ExpPoly acc = rank1::ode::model_forcing(q, theta, cap, w);
        for (int pos = ell + 1; pos >= 1; pos--) {
            const int letter = pos <= ell ? w[pos - 1] : 2;
            const JVariant variant = pos <= split ? JVariant::tail : JVariant::finite;
            acc = rank1::ode::expansion_step(letter, variant, acc, q);
        }
        double weight = std::pow(std::sqrt(2.0), rank1::ode::delta2(w));
        if ((ell + split) % 2 != 0)
            weight = -weight;
        total += acc.scaled(C(weight, 0.0));
    }
    return total;
}

int max_offset(const CoeffMap& coeffs, Branch branch) {
    int worst = -1;
    for (const auto& [key, value] : coeffs) {
        (void)value;
        if (key.branch == branch)
            worst = std::max(worst, key.m);
    }
    return worst;
}

}  // namespace

TEST_CASE("letter counts over words and ranges") {
    const Word w{2, 3, 2, 3, 3};
    CHECK(rank1::ode::delta2(w) == 2);
    CHECK(rank1::ode::delta3(w) == 3);
    CHECK(rank1::ode::delta2(w, 2, 4) == 1);
    CHECK(rank1::ode::delta3(w, 2, 4) == 2);
    CHECK(rank1::ode::delta2(w, 1, 1) == 1);
    CHECK(rank1::ode::delta3(w, 1, 1) == 0);
    CHECK(rank1::ode::delta2(Word{}) == 0);
    CHECK(rank1::ode::delta2(w, 4, 2) == 0);
}

TEST_CASE("switch depth table matches the regime classification") {
    using rank1::repn::Regime;
    CHECK(rank1::ode::classify_regime(3, -1.0) == Regime::imaginary);
    CHECK(rank1::ode::classify_regime(5, 1e-13) == Regime::zero);
    CHECK(rank1::ode::classify_regime(6, 1.0) == Regime::real_small);
    CHECK(rank1::ode::classify_regime(4, 1.0) == Regime::real_mid);
    CHECK(rank1::ode::classify_regime(4, 4.0) == Regime::real_large);

    auto depths = [](int n, double D) { return rank1::ode::switch_depths(params_with_D(n, D)); };

    auto s = depths(3, -1.0);
    CHECK(s.ell_plus == 1);
    CHECK(s.ell_minus == 0);
    CHECK(s.theorem_ell_plus == 3);

    s = depths(5, -1.0);
    CHECK(s.ell_plus == 2);
    CHECK(s.ell_minus == 0);
    CHECK(s.theorem_ell_plus == 4);

    s = depths(7, -1.0);
    CHECK(s.ell_plus == 3);
    CHECK(s.theorem_ell_plus == 5);

    s = depths(4, -1.0);
    CHECK(s.ell_plus == 1);
    CHECK(s.theorem_ell_plus == 3);

    s = depths(5, 0.0);
    CHECK(s.ell_plus == 2);
    CHECK(s.theorem_ell_plus == 4);

    s = depths(6, 1.0);
    CHECK(s.ell_plus == 5);
    CHECK(s.ell_minus == 1);
    CHECK(s.theorem_ell_plus == 5);

    s = depths(4, 1.0);
    CHECK(s.ell_plus == 2);
    CHECK(s.ell_minus == 0);
    CHECK(s.theorem_ell_plus == 4);

    s = depths(4, 4.0);
    CHECK(s.ell_plus == 3);
    CHECK(s.ell_minus == 0);
    CHECK(s.theorem_ell_plus == 5);
}

TEST_CASE("finite step reproduces the particular solution of the solver") {
    for (double D : {-1.0, -2.5, 0.0, 0.2}) {
        const ODEParams q = params_with_D(4, D);
        const ExpPoly forcing = ExpPoly{{{C(0.7, 0.1), 0, C(-0.4, 0.0)},
                                         {C(-0.3, 0.0), 1, C(-1.1, 0.0)}}};
        const ExpPoly via_step = rank1::ode::expansion_step(2, JVariant::finite, forcing, q);
        const ExpPoly via_solver = rank1::ode::solve_ode_explicit(q, forcing);
        CHECK(coeff_distance(via_step, via_solver) < 1e-12);
    }
}

TEST_CASE("homogeneous scalars collapse the expansion to the seed") {
    const ODEParams q = params_with_D(5, -1.0);
    ThetaProvider theta = [](const Word& w) {
        if (w.empty())
            return std::make_pair(C(0.7, 0.0), C(0.0, -0.3));
        return std::make_pair(C(0.0, 0.0), C(0.0, 0.0));
    };
    const ExpansionReport report = rank1::ode::expand_iterated(q, theta, 4);
    CHECK(report.ell == 4);
    CHECK(report.ell_plus == 2);
    REQUIRE(report.coeffs.size() == 2);
    CHECK(std::abs(report.coeffs.at({Branch::minus, 0}) - C(0.7, 0.0)) < 1e-14);
    CHECK(std::abs(report.coeffs.at({Branch::plus, 0}) - C(0.0, -0.3)) < 1e-14);
    CHECK(report.fitted_decay == 0.0);
    REQUIRE(report.remainder_samples.size() == 25);
    for (const auto& [t, a] : report.remainder_samples) {
        CHECK(t >= 2.0);
        CHECK(t <= 8.0);
        CHECK(a < 1e-280);
    }
}

TEST_CASE("finite chains shift the exponent lattice by the letter weights") {
    const ODEParams q = params_with_D(5, -1.0);

    // Four 2-steps on the slow branch: offsets reach 4 on minus, 3 on plus.
    ExpPoly acc = ExpPoly::monomial(C(1.0, 0.0), 0, q.lambda_minus);
    for (int k = 0; k < 4; k++)
        acc = rank1::ode::expansion_step(2, JVariant::finite, acc, q);
    CoeffMap coeffs = rank1::ode::collect_coefficients(acc, q);
    CHECK(max_offset(coeffs, Branch::minus) == 4);
    CHECK(max_offset(coeffs, Branch::plus) == 3);
    CHECK(max_offset(coeffs, Branch::polynomial) == -1);

    // Mirror image starting on the fast branch.
    acc = ExpPoly::monomial(C(1.0, 0.0), 0, q.lambda_plus);
    for (int k = 0; k < 4; k++)
        acc = rank1::ode::expansion_step(2, JVariant::finite, acc, q);
    coeffs = rank1::ode::collect_coefficients(acc, q);
    CHECK(max_offset(coeffs, Branch::plus) == 4);
    CHECK(max_offset(coeffs, Branch::minus) == 3);

    // A 3-step past the innermost position adds one to both offsets.
    acc = ExpPoly::monomial(C(1.0, 0.0), 0, q.lambda_minus);
    for (int letter : {2, 3, 2, 2})
        acc = rank1::ode::expansion_step(letter, JVariant::finite, acc, q);
    coeffs = rank1::ode::collect_coefficients(acc, q);
    CHECK(max_offset(coeffs, Branch::minus) == 5);
    CHECK(max_offset(coeffs, Branch::plus) == 4);
}

TEST_CASE("expansion plus direct remainder reassembles the truncated model") {
    const ODEParams q = params_with_D(5, -1.0);
    const ThetaProvider theta = geometric_theta();
    const int ell = 4;

    const ExpansionReport report = rank1::ode::expand_iterated(q, theta, ell);
    const ExpPoly expansion = rank1::ode::rebuild_from_coefficients(report.coeffs, q);
    const ExpPoly remainder = direct_tail_remainder(q, theta, ell, report.ell_plus);
    const ExpPoly model = rank1::ode::model_solution(q, theta, ell + 1, {});

    for (double t : {0.0, 0.5, 1.0, 2.0, 3.5, 5.0, 7.0}) {
        const C lhs = model.eval(t);
        const C rhs = expansion.eval(t) + remainder.eval(t);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }

    // The sampled remainder magnitudes belong to the same function.
    for (const auto& [t, a] : report.remainder_samples) {
        CHECK(std::abs(a - std::abs(remainder.eval(t))) < 1e-12);
    }

    // Every reported offset stays within the depth-2ell lattice window and
    // the oscillatory regime has no polynomial branch.
    for (const auto& [key, value] : report.coeffs) {
        (void)value;
        CHECK(key.m <= 2 * ell);
        CHECK(key.branch != Branch::polynomial);
    }
}

TEST_CASE("fitted decay improves with depth and certifies the deep run") {
    const ODEParams q = params_with_D(5, -1.0);
    const ThetaProvider theta = geometric_theta();

    double previous = 0.0;
    for (int ell = 3; ell <= 8; ell++) {
        const ExpansionReport report = rank1::ode::expand_iterated(q, theta, ell);
        if (ell > 3)
            CHECK(report.fitted_decay <= previous - 1.0 + 0.2);
        previous = report.fitted_decay;
        // At ell = 6 the certified bound is lambda_minus - (ell - ell_plus - 1)
        // plus the fit tolerance.
        if (ell == 6)
            CHECK(report.fitted_decay <= -4.8);
    }
}

TEST_CASE("repeated root engine stays on the affine lattice") {
    const ODEParams q = params_with_D(3, 0.0);
    const ThetaProvider theta = geometric_theta();
    const ExpansionReport report = rank1::ode::expand_iterated(q, theta, 4);

    bool has_polynomial = false;
    for (const auto& [key, value] : report.coeffs) {
        (void)value;
        CHECK(key.branch != Branch::plus);
        CHECK(key.m <= 8);
        if (key.branch == Branch::polynomial)
            has_polynomial = true;
    }
    CHECK(has_polynomial);
    CHECK(report.fitted_decay < -2.5);

    // Reassembly sanity at a few sample points.
    const ExpPoly expansion = rank1::ode::rebuild_from_coefficients(report.coeffs, q);
    const ExpPoly remainder = direct_tail_remainder(q, theta, 4, report.ell_plus);
    const ExpPoly model = rank1::ode::model_solution(q, theta, 5, {});
    for (double t : {0.5, 1.5, 3.0})
        CHECK(std::abs(model.eval(t) - expansion.eval(t) - remainder.eval(t)) < 1e-12);
}

TEST_CASE("small real discriminants run and large ones are rejected") {
    const ThetaProvider theta = geometric_theta();

    const ODEParams small = params_with_D(3, 0.2);
    const ExpansionReport report = rank1::ode::expand_iterated(small, theta, 3);
    CHECK(report.fitted_decay < -2.0);
    for (const auto& [key, value] : report.coeffs) {
        (void)value;
        CHECK(key.m <= 6);
    }

    CHECK_THROWS_AS(rank1::ode::expand_iterated(params_with_D(3, 4.0), theta, 5),
                    std::invalid_argument);
    CHECK_THROWS_AS(rank1::ode::expand_iterated(params_with_D(3, 0.25), theta, 5),
                    std::invalid_argument);
    // Depth at or below the switch depth is refused.
    CHECK_THROWS_AS(rank1::ode::expand_iterated(params_with_D(5, -1.0), theta, 2),
                    std::invalid_argument);
}

TEST_CASE("coefficient collection anchors the lattice") {
    const ODEParams q = params_with_D(3, -1.0);

    const ExpPoly simple = ExpPoly{{{C(2.0, 0.0), 0, q.lambda_minus},
                                    {C(3.0, 0.0), 0, q.lambda_minus - C(1.0, 0.0)}}};
    CoeffMap coeffs = rank1::ode::collect_coefficients(simple, q);
    REQUIRE(coeffs.size() == 2);
    CHECK(std::abs(coeffs.at({Branch::minus, 0}) - C(2.0, 0.0)) < 1e-14);
    CHECK(std::abs(coeffs.at({Branch::minus, 1}) - C(3.0, 0.0)) < 1e-14);

    const ExpPoly affine = ExpPoly::monomial(C(1.0, 0.0), 1, q.lambda_minus);
    coeffs = rank1::ode::collect_coefficients(affine, q);
    REQUIRE(coeffs.size() == 1);
    CHECK(std::abs(coeffs.at({Branch::polynomial, 0}) - C(1.0, 0.0)) < 1e-14);

    // Round trip through a mixed map.
    CoeffMap mixed;
    mixed[{Branch::minus, 0}] = C(0.3, -0.2);
    mixed[{Branch::minus, 3}] = C(-1.1, 0.0);
    mixed[{Branch::plus, 1}] = C(0.0, 0.45);
    mixed[{Branch::plus, 4}] = C(2.0, 1.0);
    const ExpPoly rebuilt = rank1::ode::rebuild_from_coefficients(mixed, q);
    const CoeffMap again = rank1::ode::collect_coefficients(rebuilt, q);
    REQUIRE(again.size() == mixed.size());
    for (const auto& [key, value] : mixed)
        CHECK(std::abs(again.at(key) - value) < 1e-12);

    CHECK_THROWS_WITH_AS(
        (void)rank1::ode::collect_coefficients(ExpPoly::monomial(C(1.0, 0.0), 0, C(0.37, 0.0)),
                                               q),
        doctest::Contains("0.37"), std::invalid_argument);
    CHECK_THROWS_AS(
        (void)rank1::ode::collect_coefficients(ExpPoly::monomial(C(1.0, 0.0), 2, q.lambda_minus),
                                               q),
        std::invalid_argument);
    // Exponents above the anchors are off the lattice too.
    CHECK_THROWS_AS((void)rank1::ode::collect_coefficients(
                        ExpPoly::monomial(C(1.0, 0.0), 0, q.lambda_minus + C(1.0, 0.0)), q),
                    std::invalid_argument);
}

TEST_CASE("spectral filtering removes invisible fast-branch terms") {
    ExpansionReport report;
    report.coeffs[{Branch::plus, 0}] = C(1.0, 0.0);
    report.coeffs[{Branch::plus, 1}] = C(1.0, 0.0);
    report.coeffs[{Branch::plus, 2}] = C(1.0, 0.0);
    report.coeffs[{Branch::plus, 3}] = C(1.0, 0.0);
    report.coeffs[{Branch::minus, 0}] = C(1.0, 0.0);

    // Imaginary sqrt(D): nothing to drop.
    const ODEParams osc = params_with_D(6, -1.0);
    ExpansionReport kept = rank1::ode::filter_coefficients(report, 0.5, osc);
    CHECK(kept.coeffs.size() == 5);

    // sqrt(D) = 2 against nu = 0.5: offsets below 1.5 are invisible.
    const ODEParams mid = params_with_D(6, 4.0);
    kept = rank1::ode::filter_coefficients(report, 0.5, mid);
    CHECK(kept.coeffs.count({Branch::plus, 0}) == 0);
    CHECK(kept.coeffs.count({Branch::plus, 1}) == 0);
    CHECK(kept.coeffs.count({Branch::plus, 2}) == 1);
    CHECK(kept.coeffs.count({Branch::plus, 3}) == 1);
    CHECK(kept.coeffs.count({Branch::minus, 0}) == 1);

    // sqrt(D) at rho or above: the whole fast branch goes.
    const ODEParams big = params_with_D(6, 9.0);
    kept = rank1::ode::filter_coefficients(report, 0.5, big);
    CHECK(kept.coeffs.size() == 1);
    CHECK(kept.coeffs.count({Branch::minus, 0}) == 1);

    CHECK_THROWS_AS(rank1::ode::filter_coefficients(report, 2.5, big), std::invalid_argument);
    CHECK_THROWS_AS(rank1::ode::filter_coefficients(report, -0.1, big), std::invalid_argument);
}

TEST_CASE("truncation shift conventions stay a bounded distance apart") {
    auto v = rank1::ode::main_shifts(rank1::ode::MainShiftVariant::vector_theorem, 8, 5,
                                     C(2.0, 0.0));
    CHECK(v.first == 4);
    CHECK(v.second == 0);
    v = rank1::ode::main_shifts(rank1::ode::MainShiftVariant::pointwise_theorem, 8, 5,
                                C(2.0, 0.0));
    CHECK(v.first == 0);
    CHECK(v.second == 0);
    v = rank1::ode::main_shifts(rank1::ode::MainShiftVariant::vector_theorem, 8, 5, C(0.0, 1.0));
    CHECK(v.first == 3);
    CHECK(v.second == 3);
}
