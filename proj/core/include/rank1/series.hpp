#pragma once

#include <complex>
#include <string>

#include "rank1/weights.hpp"

namespace rank1 {
namespace repn {

// The four families of irreducible unitary representations of SO(n,1),
// each attached to an M-type eta and a spectral parameter.
enum class Series { principal, complementary, endpoint, discrete };

// A validated point in the unitary dual. Construct through the factory
// functions below; they enforce the admissible parameter ranges and fill in
// the derived index j (smallest 1-based position of a zero entry of eta,
// 0 when eta has none).
//
// The spectral parameter is stored twice: param_real always holds the double
// value, and param_rat/param_rational records the exact value when the
// factory received one. Meaning by series:
//   principal:     s with nu = i s
//   complementary: nu itself
//   endpoint:      unused (m and j determine nu = (n+1)/2 - j + m)
//   discrete:      s with nu = -s - 1/2; discrete_case_a means nu = -1/2
struct SeriesParam {
    Series kind;
    int n;
    HighestWeight eta;
    double param_real = 0.0;
    Rat param_rat{0};
    bool param_rational = false;
    int m = 0;
    int j = 0;
    bool discrete_case_a = false;
};

// 1-based index of the first zero entry, or 0 if all entries are nonzero.
int smallest_zero_index(const HighestWeight& w);

SeriesParam principal_series(int n, const HighestWeight& eta, const Rat& s);
SeriesParam principal_series(int n, const HighestWeight& eta, double s);
SeriesParam complementary_series(int n, const HighestWeight& eta, const Rat& nu);
SeriesParam complementary_series(int n, const HighestWeight& eta, double nu);
SeriesParam endpoint_series(int n, const HighestWeight& eta, int m);
// nu = -1/2 subcase; requires an integer-class eta.
SeriesParam discrete_series(int n, const HighestWeight& eta);
// nu = -s - 1/2 subcase; requires a nonzero last entry of eta.
SeriesParam discrete_series(int n, const HighestWeight& eta, const Rat& s);

// True when every quantity below is available in exact arithmetic.
bool has_exact_parameter(const SeriesParam& p);

// Casimir eigenvalue mu of the representation.
double casimir_G_series(const SeriesParam& p);
Rat casimir_G_series_exact(const SeriesParam& p);

// nu^2 as a real number (negative for the principal family).
double nu_squared(const SeriesParam& p);
Rat nu_squared_exact(const SeriesParam& p);

// Casimir eigenvalue of the inducing M-type.
Rat varpi_hat(const SeriesParam& p);

// Classification of sqrt(D): purely imaginary, zero, or real and measured
// against the breakpoints (n-3)/2 and (n-1)/2.
enum class Regime { imaginary, zero, real_small, real_mid, real_large };

std::string regime_name(Regime r);

// Discriminant package for one (representation, M-type) pair. varpi is the
// Casimir of the M-type met in the K-decomposition; varpi_hat belongs to the
// inducing M-type and is fixed across the representation.
struct SpectralDatum {
    int n;
    double mu;
    Rat varpi;
    Rat varpi_hat;
    double nu_sq;
    double D;
    Regime regime;
    bool half_integer_flag;
    std::complex<double> lambda_plus;
    std::complex<double> lambda_minus;
};

// Computes D both as (n-1)^2/4 - (varpi - mu) and as nu^2 + varpi_hat - varpi
// and insists the two agree to 1e-10; classifies the regime, flags
// 2 sqrt(D) in Z (1e-9), and fills lambda_pm = (1-n)/2 +- sqrt(D).
SpectralDatum discriminant_data(double mu, const Rat& varpi,
                                const Rat& varpi_hat, double nu_sq, int n);

// Convenience: datum for a series point against the M-type k_side_eta.
SpectralDatum spectral_datum(const SeriesParam& p, const HighestWeight& k_side_eta);

struct AdmissibilityResult {
    double lambda;
    bool admissible;
};

// lambda = -mu + tau(Omega_K); admissible when lambda >= -1e-12.
AdmissibilityResult admissibility_check(double mu, const Rat& tau_casimir);

// (1 - mu + 2 tau(Omega_K))^k * norm_sq_s; the base must be positive.
double sobolev_shift(double norm_sq_s, double mu, const Rat& tau_casimir, int k);

}  // namespace repn
}  // namespace rank1
