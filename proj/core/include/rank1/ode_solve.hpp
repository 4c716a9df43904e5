// Closed-form and numerical treatment of the rank-one radial ODE
//
//     y'' + (n-1) y' + (varpi - mu) y = 2 e^{-t} G(t),
//
// together with the integral operators J_i^{+/-} (finite, tail, and limit
// variants) that drive the iterated expansion.  Everything on the closed-form
// side stays inside the exact ExpPoly algebra.
#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "rank1/exp_poly.hpp"
#include "rank1/rational.hpp"

namespace rank1 {
namespace ode {

/// |D| at or below this threshold selects the repeated-root machinery.
inline constexpr double kCriticalDTol = 1e-12;

/// Coefficients of the ODE in normalized form, plus the derived spectral
/// data.  D = (n-1)^2/4 - (varpi - mu); lambda_{+/-} = (1-n)/2 +/- sqrt(D),
/// with sqrt(D) = i sqrt(|D|) when D < 0.  I0 and I0_prime are the initial
/// value and derivative of the solution being expanded.
struct ODEParams {
    int n = 3;
    double mu = 0.0;
    repn::Rat varpi{0};
    double D = 0.0;
    std::complex<double> sqrt_D{0.0};
    std::complex<double> lambda_plus{0.0};
    std::complex<double> lambda_minus{0.0};
    std::complex<double> I0{0.0};
    std::complex<double> I0_prime{0.0};
};

/// Builds a consistent parameter pack from (n, mu, varpi) and initial data.
/// Throws std::invalid_argument for n < 2.
ODEParams make_ode_params(int n, double mu, const repn::Rat& varpi,
                          std::complex<double> I0, std::complex<double> I0_prime);

enum class JSign { plus, minus };
enum class JVariant { finite, tail, limit };

/// The operator J_i^{sign} in one of three range variants:
///
///   finite:  e^{lambda_opp t} Int_0^t    e^{(n-i+lambda_sign) xi} P(xi) dxi
///   tail:    e^{lambda_opp t} Int_t^inf  e^{(n-i+lambda_sign) xi} P(xi) dxi
///   limit:   e^{lambda_opp t} Int_0^inf  e^{(n-i+lambda_sign) xi} P(xi) dxi
///
/// where lambda_opp is lambda_minus for sign=plus and vice versa.  The limit
/// variant therefore returns a single constant multiple of e^{lambda_opp t}.
/// i must be 2 or 3.  Tail and limit variants throw DivergentIntegral when a
/// shifted exponent fails to decay, naming the offending term.
ExpPoly apply_J(int i, JSign sign, JVariant variant, const ExpPoly& P,
                const ODEParams& params);

/// Repeated-root counterpart used when D = 0 (lambda = (1-n)/2): the kernel
/// acquires a linear factor,
///
///   e^{lambda t} Int (t - xi) e^{((1+n)/2 - i) xi} P(xi) dxi
///
/// over the same three ranges.  Each application may raise the t-degree by
/// one.  Requires |params.D| <= kCriticalDTol.
ExpPoly apply_J_critical(JVariant variant, int i, const ExpPoly& P,
                         const ODEParams& params);

/// Unique classical solution with y(0) = I0, y'(0) = I0_prime:
///
///   C1 e^{lambda_- t} + C2 e^{lambda_+ t}
///     + (1/sqrt(D)) [J_2^-(G) - J_2^+(G)]            (D != 0)
///
/// with C1 = (lambda_+ y(0) - y'(0)) / (2 sqrt(D)) and
/// C2 = (y'(0) - lambda_- y(0)) / (2 sqrt(D)); for D = 0 the repeated-root
/// branch C1 e^{lambda t} + C2 t e^{lambda t} + 2 J_crit(G) with C1 = y(0),
/// C2 = y'(0) - lambda y(0).  Resonant forcing exponents are absorbed by the
/// sigma = 0 monomial branch and never raise an error.
ExpPoly solve_ode_explicit(const ODEParams& params, const ExpPoly& forcing);

/// Exact residual y'' + (n-1) y' + (varpi - mu) y - 2 e^{-t} forcing,
/// computed by ExpPoly differentiation.  Zero (after canonicalization) iff
/// y solves the ODE for this forcing.
ExpPoly ode_residual(const ODEParams& params, const ExpPoly& y,
                     const ExpPoly& forcing);

/// Classical fixed-step RK4 oracle for the same equation with an arbitrary
/// forcing callback.  Returns steps+1 uniform samples of y on [0, t_end].
/// Throws std::invalid_argument for steps < 100.
std::vector<std::pair<double, std::complex<double>>> solve_ode_numeric(
    const ODEParams& params,
    const std::function<std::complex<double>(double)>& forcing, double t_end,
    int steps);

}  // namespace ode
}  // namespace rank1
