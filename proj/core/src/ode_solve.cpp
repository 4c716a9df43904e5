#include "rank1/ode_solve.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rank1 {
namespace ode {

namespace {

using C = std::complex<double>;

std::string describe_term(const ExpPolyTerm& term) {
    std::ostringstream out;
    out << "term (" << term.coeff.real() << (term.coeff.imag() < 0 ? "" : "+")
        << term.coeff.imag() << "i) t^" << term.tpow << " e^{("
        << term.exponent.real() << (term.exponent.imag() < 0 ? "" : "+")
        << term.exponent.imag() << "i) t}";
    return out.str();
}

void check_index(int i) {
    if (i != 2 && i != 3)
        throw std::invalid_argument("apply_J: operator index must be 2 or 3, got " +
                                    std::to_string(i));
}

IntegralMode range_of(JVariant variant) {
    return variant == JVariant::finite ? IntegralMode::finite_0_to_t
                                       : IntegralMode::tail_t_to_inf;
}

}  // namespace

ODEParams make_ode_params(int n, double mu, const repn::Rat& varpi, C I0, C I0_prime) {
    if (n < 2)
        throw std::invalid_argument("make_ode_params: need n >= 2, got " + std::to_string(n));
    ODEParams p;
    p.n = n;
    p.mu = mu;
    p.varpi = varpi;
    const double rho = (n - 1) / 2.0;
    p.D = rho * rho - (repn::to_double(varpi) - mu);
    p.sqrt_D = p.D >= 0.0 ? C(std::sqrt(p.D)) : C(0.0, std::sqrt(-p.D));
    p.lambda_plus = C((1.0 - n) / 2.0) + p.sqrt_D;
    p.lambda_minus = C((1.0 - n) / 2.0) - p.sqrt_D;
    p.I0 = I0;
    p.I0_prime = I0_prime;
    return p;
}

ExpPoly apply_J(int i, JSign sign, JVariant variant, const ExpPoly& P,
                const ODEParams& params) {
    check_index(i);
    const C lam_kernel = sign == JSign::plus ? params.lambda_plus : params.lambda_minus;
    const C lam_prefix = sign == JSign::plus ? params.lambda_minus : params.lambda_plus;
    const C base = C(static_cast<double>(params.n - i)) + lam_kernel;

    ExpPoly out;
    for (const auto& term : P.terms()) {
        const C sigma = base + term.exponent;
        ExpPoly piece;
        try {
            piece = integrate_monomial(term.tpow, sigma, range_of(variant));
        } catch (const DivergentIntegral& e) {
            throw DivergentIntegral(std::string(e.what()) + " while applying J_" +
                                    std::to_string(i) +
                                    (sign == JSign::plus ? "^+" : "^-") + " to " +
                                    describe_term(term));
        }
        if (variant == JVariant::limit)
            piece = ExpPoly::constant(piece.eval(0.0));
        out += piece.scaled(term.coeff);
    }
    return out.shifted(lam_prefix);
}

ExpPoly apply_J_critical(JVariant variant, int i, const ExpPoly& P,
                         const ODEParams& params) {
    check_index(i);
    if (std::abs(params.D) > kCriticalDTol)
        throw std::invalid_argument(
            "apply_J_critical: requires D = 0, got D = " + std::to_string(params.D));
    const C lam = C((1.0 - params.n) / 2.0);
    const C kappa = C((1.0 + params.n) / 2.0 - i);

    ExpPoly out;
    for (const auto& term : P.terms()) {
        const C sigma = kappa + term.exponent;
        const IntegralMode mode = range_of(variant);
        ExpPoly lower, upper;
        try {
            lower = integrate_monomial(term.tpow, sigma, mode);
            upper = integrate_monomial(term.tpow + 1, sigma, mode);
        } catch (const DivergentIntegral& e) {
            throw DivergentIntegral(std::string(e.what()) +
                                    " while applying the critical J_" + std::to_string(i) +
                                    " to " + describe_term(term));
        }
        // (t - xi) kernel: t * Int xi^p - Int xi^{p+1} over the chosen range.
        ExpPoly piece;
        if (variant == JVariant::limit) {
            piece = ExpPoly{{ExpPolyTerm{lower.eval(0.0), 1, C(0.0)},
                             ExpPolyTerm{-upper.eval(0.0), 0, C(0.0)}}};
        } else {
            piece = lower.times_t() - upper;
        }
        out += piece.scaled(term.coeff);
    }
    return out.shifted(lam);
}

ExpPoly solve_ode_explicit(const ODEParams& params, const ExpPoly& forcing) {
    const C y0 = params.I0;
    const C y0p = params.I0_prime;

    if (std::abs(params.D) <= kCriticalDTol) {
        const C lam = C((1.0 - params.n) / 2.0);
        ExpPoly solution{{ExpPolyTerm{y0, 0, lam}, ExpPolyTerm{y0p - lam * y0, 1, lam}}};
        if (!forcing.is_zero())
            solution += apply_J_critical(JVariant::finite, 2, forcing, params).scaled(C(2.0));
        return solution;
    }

    const C c1 = (params.lambda_plus * y0 - y0p) / (2.0 * params.sqrt_D);
    const C c2 = (y0p - params.lambda_minus * y0) / (2.0 * params.sqrt_D);
    ExpPoly solution{{ExpPolyTerm{c1, 0, params.lambda_minus},
                      ExpPolyTerm{c2, 0, params.lambda_plus}}};
    if (!forcing.is_zero()) {
        const ExpPoly particular =
            (apply_J(2, JSign::minus, JVariant::finite, forcing, params) -
             apply_J(2, JSign::plus, JVariant::finite, forcing, params))
                .scaled(C(1.0) / params.sqrt_D);
        solution += particular;
    }
    return solution;
}

ExpPoly ode_residual(const ODEParams& params, const ExpPoly& y, const ExpPoly& forcing) {
    const double c0 = repn::to_double(params.varpi) - params.mu;
    const ExpPoly yp = y.derivative();
    return yp.derivative() + yp.scaled(C(params.n - 1.0)) + y.scaled(C(c0)) -
           forcing.shifted(C(-1.0)).scaled(C(2.0));
}

std::vector<std::pair<double, C>> solve_ode_numeric(
    const ODEParams& params, const std::function<C(double)>& forcing, double t_end,
    int steps) {
    if (steps < 100)
        throw std::invalid_argument("solve_ode_numeric: need steps >= 100, got " +
                                    std::to_string(steps));
    const double c0 = repn::to_double(params.varpi) - params.mu;
    const double c1 = params.n - 1.0;
    const auto rhs = [&](double t, C y, C v) -> std::pair<C, C> {
        return {v, -c1 * v - c0 * y + 2.0 * std::exp(-t) * forcing(t)};
    };

    const double h = t_end / steps;
    C y = params.I0;
    C v = params.I0_prime;
    std::vector<std::pair<double, C>> samples;
    samples.reserve(steps + 1);
    samples.emplace_back(0.0, y);
    for (int k = 0; k < steps; ++k) {
        const double t = k * h;
        const auto [k1y, k1v] = rhs(t, y, v);
        const auto [k2y, k2v] = rhs(t + 0.5 * h, y + 0.5 * h * k1y, v + 0.5 * h * k1v);
        const auto [k3y, k3v] = rhs(t + 0.5 * h, y + 0.5 * h * k2y, v + 0.5 * h * k2v);
        const auto [k4y, k4v] = rhs(t + h, y + h * k3y, v + h * k3v);
        y += (h / 6.0) * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        v += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        samples.emplace_back((k + 1) * h, y);
    }
    return samples;
}

}  // namespace ode
}  // namespace rank1
