#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "oracle_quadrature.hpp"
#include "rank1/exp_poly.hpp"

using rank1::ode::DivergentIntegral;
using rank1::ode::ExpPoly;
using rank1::ode::ExpPolyTerm;
using rank1::ode::IntegralMode;
using rank1::ode::integrate_monomial;

using C = std::complex<double>;

namespace {

// Largest coefficient modulus of a - b; zero iff the two agree term by term.
double coeff_distance(const ExpPoly& a, const ExpPoly& b) {
    return (a - b).max_abs_coeff();
}

}  // namespace

TEST_CASE("evaluation of canonical monomials") {
    CHECK(ExpPoly::constant(C(1.0)).eval(5.0) == C(1.0));
    CHECK(ExpPoly::monomial(C(2.0), 1, C(-1.0)).eval(0.0) == C(0.0));

    const ExpPoly p = ExpPoly::monomial(C(1.0), 0, C(-1.0)) + ExpPoly::monomial(C(1.0), 0, C(-2.0));
    CHECK(std::abs(p.eval(std::log(2.0)) - C(0.75)) < 1e-15);

    const ExpPoly osc = ExpPoly::monomial(C(0.0, 1.0), 2, C(0.0, 1.0));
    const double t = 1.7;
    CHECK(std::abs(osc.eval(t) - C(0.0, 1.0) * (t * t) * std::exp(C(0.0, t))) < 1e-14);
}

TEST_CASE("canonical form merges, cancels, and prunes") {
    ExpPoly p{{ExpPolyTerm{C(1.0), 0, C(-1.0)},
               ExpPolyTerm{C(2.0), 0, C(-1.0, 5e-13)},
               ExpPolyTerm{C(0.5), 1, C(-1.0)}}};
    CHECK(p.size() == 2);
    CHECK(p.max_tpow() == 1);

    const ExpPoly q = p - p;
    CHECK(q.is_zero());
    CHECK(q.eval(3.0) == C(0.0));

    ExpPoly dust{{ExpPolyTerm{C(1e-15), 0, C(0.0)}}};
    CHECK(dust.is_zero());

    const std::vector<ExpPolyTerm> bad{ExpPolyTerm{C(1.0), -1, C(0.0)}};
    CHECK_THROWS_AS((ExpPoly{bad}), std::invalid_argument);
}

TEST_CASE("derivative, shift, and t-multiplication agree with calculus") {
    // d/dt t^2 e^{3t} = 2 t e^{3t} + 3 t^2 e^{3t}
    const ExpPoly p = ExpPoly::monomial(C(1.0), 2, C(3.0));
    const ExpPoly expected =
        ExpPoly::monomial(C(2.0), 1, C(3.0)) + ExpPoly::monomial(C(3.0), 2, C(3.0));
    CHECK(coeff_distance(p.derivative(), expected) == 0.0);

    const ExpPoly r = ExpPoly::monomial(C(2.0, -1.0), 1, C(-0.5, 2.0));
    for (double t : {0.3, 1.1, 2.9}) {
        const double h = 1e-6;
        const C fd = (r.eval(t + h) - r.eval(t - h)) / (2.0 * h);
        CHECK(std::abs(r.derivative().eval(t) - fd) < 1e-7);
        CHECK(std::abs(r.shifted(C(0.25)).eval(t) - r.eval(t) * std::exp(0.25 * t)) < 1e-12);
        CHECK(std::abs(r.times_t(2).eval(t) - r.eval(t) * t * t) < 1e-12);
    }
}

TEST_CASE("finite integrals on frozen closed forms") {
    // int_0^t xi d xi = t^2/2
    const ExpPoly lin = integrate_monomial(1, C(0.0), IntegralMode::finite_0_to_t);
    CHECK(coeff_distance(lin, ExpPoly::monomial(C(0.5), 2, C(0.0))) == 0.0);

    // int_0^t e^{2 xi} d xi = (e^{2t} - 1)/2
    const ExpPoly g = integrate_monomial(0, C(2.0), IntegralMode::finite_0_to_t);
    const ExpPoly g_expected =
        ExpPoly::monomial(C(0.5), 0, C(2.0)) + ExpPoly::constant(C(-0.5));
    CHECK(coeff_distance(g, g_expected) < 1e-15);
    const C quad = oracle::integrate([](double x) { return std::exp(C(2.0 * x)); }, 0.0, 1.0);
    CHECK(std::abs(g.eval(1.0) - quad) < 1e-10);
}

TEST_CASE("tail integrals on frozen closed forms") {
    // int_t^inf e^{-xi} d xi = e^{-t}
    const ExpPoly t0 = integrate_monomial(0, C(-1.0), IntegralMode::tail_t_to_inf);
    CHECK(coeff_distance(t0, ExpPoly::monomial(C(1.0), 0, C(-1.0))) == 0.0);

    // value at t = 0 is the full half-line integral p!/(-sigma)^{p+1}
    const ExpPoly t3 = integrate_monomial(3, C(-1.0), IntegralMode::tail_t_to_inf);
    CHECK(std::abs(t3.eval(0.0) - C(6.0)) < 1e-12);
    const ExpPoly t2 = integrate_monomial(2, C(-2.0), IntegralMode::tail_t_to_inf);
    CHECK(std::abs(t2.eval(0.0) - C(0.25)) < 1e-13);
    CHECK(std::abs(t2.eval(30.0)) < 1e-20);
}

TEST_CASE("integration and differentiation invert each other") {
    std::mt19937 rng(2024u);
    std::uniform_real_distribution<double> re(-3.0, -0.2);
    std::uniform_real_distribution<double> im(-4.0, 4.0);
    std::uniform_int_distribution<int> pow_draw(0, 8);

    for (int trial = 0; trial < 50; ++trial) {
        const int p = pow_draw(rng);
        const C sigma(re(rng), im(rng));
        const ExpPoly target = ExpPoly::monomial(C(1.0), p, sigma);

        const ExpPoly fin = integrate_monomial(p, sigma, IntegralMode::finite_0_to_t);
        CHECK(coeff_distance(fin.derivative(), target) < 1e-9);
        CHECK(std::abs(fin.eval(0.0)) < 1e-12);

        const ExpPoly tail = integrate_monomial(p, sigma, IntegralMode::tail_t_to_inf);
        CHECK(coeff_distance(tail.derivative(), target.scaled(C(-1.0))) < 1e-9);

        // Splitting the half line at t recovers the full integral.
        const ExpPoly whole = fin + tail;
        CHECK(whole.size() == 1);
        CHECK(whole.max_tpow() == 0);
        const C direct = oracle::integrate_tail(
            [&](double x) { return std::pow(x, p) * std::exp(sigma * x); }, 0.0, sigma.real());
        CHECK(std::abs(whole.eval(0.7) - direct) < 1e-9 * (1.0 + std::abs(direct)));
    }
}

TEST_CASE("quadrature agreement for oscillatory kernels") {
    const C sigma(-0.6, 3.0);
    for (int p : {0, 2, 5}) {
        const ExpPoly fin = integrate_monomial(p, sigma, IntegralMode::finite_0_to_t);
        const ExpPoly tail = integrate_monomial(p, sigma, IntegralMode::tail_t_to_inf);
        for (double t : {0.5, 1.0, 2.0, 4.0}) {
            const auto f = [&](double x) { return std::pow(x, p) * std::exp(sigma * x); };
            const C q_fin = oracle::integrate(f, 0.0, t);
            const C q_tail = oracle::integrate_tail(f, t, sigma.real());
            CHECK(std::abs(fin.eval(t) - q_fin) < 1e-10 * (1.0 + std::abs(q_fin)));
            CHECK(std::abs(tail.eval(t) - q_tail) < 1e-10 * (1.0 + std::abs(q_tail)));
        }
    }
}

TEST_CASE("divergent and out-of-range integrals are rejected") {
    CHECK_THROWS_AS(integrate_monomial(0, C(1.0), IntegralMode::tail_t_to_inf),
                    DivergentIntegral);
    CHECK_THROWS_AS(integrate_monomial(2, C(0.0, 2.0), IntegralMode::tail_t_to_inf),
                    DivergentIntegral);
    CHECK_THROWS_AS(integrate_monomial(1, C(0.0), IntegralMode::tail_t_to_inf),
                    DivergentIntegral);
    CHECK_THROWS_AS(integrate_monomial(1, C(5e-10), IntegralMode::tail_t_to_inf),
                    DivergentIntegral);
    CHECK_THROWS_AS(integrate_monomial(-1, C(-1.0), IntegralMode::finite_0_to_t),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate_monomial(65, C(-1.0), IntegralMode::finite_0_to_t),
                    std::invalid_argument);

    try {
        integrate_monomial(0, C(0.5, 1.0), IntegralMode::tail_t_to_inf);
        CHECK(false);
    } catch (const DivergentIntegral& err) {
        const std::string what = err.what();
        CHECK(what.find("0.5") != std::string::npos);
    }
}

TEST_CASE("resonant kernels integrate to plain powers") {
    for (int p : {0, 3}) {
        const ExpPoly fin = integrate_monomial(p, C(0.0), IntegralMode::finite_0_to_t);
        CHECK(fin.size() == 1);
        CHECK(fin.max_tpow() == p + 1);
        CHECK(std::abs(fin.eval(2.0) - C(std::pow(2.0, p + 1) / (p + 1))) < 1e-12);
    }
    // just inside the resonance band
    const ExpPoly near = integrate_monomial(0, C(1e-10), IntegralMode::finite_0_to_t);
    CHECK(near.max_tpow() == 1);
}
