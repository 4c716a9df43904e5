#include "rank1/series.hpp"

#include <cmath>
#include <stdexcept>

namespace rank1 {
namespace repn {

namespace {

constexpr double kDualFormTol = 1e-10;
constexpr double kZeroTol = 1e-12;
constexpr double kHalfIntTol = 1e-9;

void require_m_type(const SeriesParam& p) {
    validate_dominant(p.eta);
    if (p.n < 3)
        throw std::invalid_argument("series: need n >= 3");
    if (p.eta.m != p.n - 1)
        throw std::invalid_argument("series: eta must be an SO(" +
                                    std::to_string(p.n - 1) + ") weight");
}

bool integer_class(const HighestWeight& w) {
    return w.entries.empty() || is_integer(w.entries.front());
}

Rat rho_squared(int n) { return Rat((n - 1) * (n - 1), 4); }

// Open interval (0, (n+1)/2 - j) for the complementary range.
Rat complementary_bound(int n, int j) { return Rat(n + 1, 2) - Rat(j); }

void check_complementary_range(const SeriesParam& p, const Rat* nu_exact,
                               double nu) {
    Rat bound(0);
    if (p.n % 2 == 1) {
        if (!p.eta.entries.empty() && p.eta.entries.back() != Rat(0))
            throw std::invalid_argument(
                "complementary_series: last entry of eta must vanish for odd n");
        bound = complementary_bound(p.n, p.j);
    } else if (!p.eta.entries.empty() && p.eta.entries.back() != Rat(0)) {
        if (!integer_class(p.eta))
            throw std::invalid_argument(
                "complementary_series: eta must have integer entries when its "
                "last entry is nonzero");
        bound = Rat(1, 2);
    } else {
        bound = complementary_bound(p.n, p.j);
    }
    const bool ok = nu_exact
                        ? (*nu_exact > Rat(0) && *nu_exact < bound)
                        : (nu > 0.0 && nu < to_double(bound));
    if (!ok)
        throw std::invalid_argument("complementary_series: nu must lie in (0, " +
                                    to_string(bound) + ")");
}

}  // namespace

int smallest_zero_index(const HighestWeight& w) {
    for (std::size_t i = 0; i < w.entries.size(); i++)
        if (w.entries[i] == Rat(0))
            return static_cast<int>(i) + 1;
    return 0;
}

SeriesParam principal_series(int n, const HighestWeight& eta, const Rat& s) {
    SeriesParam p = principal_series(n, eta, to_double(s));
    p.param_rat = s;
    p.param_rational = true;
    return p;
}

SeriesParam principal_series(int n, const HighestWeight& eta, double s) {
    SeriesParam p{Series::principal, n, eta};
    require_m_type(p);
    if (s < 0.0)
        throw std::invalid_argument("principal_series: need s >= 0");
    if (s == 0.0 && n % 2 == 0 && n >= 4 && is_half_odd(eta.entries.back()))
        throw std::invalid_argument(
            "principal_series: s = 0 with half-odd last entry of eta is "
            "excluded for even n >= 4");
    p.param_real = s;
    p.j = smallest_zero_index(eta);
    return p;
}

SeriesParam complementary_series(int n, const HighestWeight& eta,
                                 const Rat& nu) {
    SeriesParam p{Series::complementary, n, eta};
    require_m_type(p);
    p.j = smallest_zero_index(eta);
    check_complementary_range(p, &nu, 0.0);
    p.param_rat = nu;
    p.param_rational = true;
    p.param_real = to_double(nu);
    return p;
}

SeriesParam complementary_series(int n, const HighestWeight& eta, double nu) {
    SeriesParam p{Series::complementary, n, eta};
    require_m_type(p);
    p.j = smallest_zero_index(eta);
    check_complementary_range(p, nullptr, nu);
    p.param_real = nu;
    return p;
}

SeriesParam endpoint_series(int n, const HighestWeight& eta, int m) {
    SeriesParam p{Series::endpoint, n, eta};
    require_m_type(p);
    p.j = smallest_zero_index(eta);
    const int j_max = n % 2 == 1 ? n / 2 : n / 2 - 1;
    if (p.j == 0 || p.j > j_max)
        throw std::invalid_argument(
            "endpoint_series: need a zero entry of eta at position <= " +
            std::to_string(j_max));
    if (m < 0)
        throw std::invalid_argument("endpoint_series: need m >= 0");
    if (p.j >= 2 && Rat(m) > eta.entries[p.j - 2])
        throw std::invalid_argument("endpoint_series: need m <= " +
                                    to_string(eta.entries[p.j - 2]) +
                                    " (entry preceding the zero tail)");
    p.m = m;
    p.param_rational = true;
    return p;
}

SeriesParam discrete_series(int n, const HighestWeight& eta) {
    SeriesParam p{Series::discrete, n, eta};
    require_m_type(p);
    if (n % 2 != 0 || n < 4)
        throw std::invalid_argument("discrete_series: need even n >= 4");
    if (!integer_class(eta))
        throw std::invalid_argument(
            "discrete_series: nu = -1/2 subcase needs integer entries of eta");
    p.discrete_case_a = true;
    p.param_rational = true;
    p.j = smallest_zero_index(eta);
    return p;
}

SeriesParam discrete_series(int n, const HighestWeight& eta, const Rat& s) {
    SeriesParam p{Series::discrete, n, eta};
    require_m_type(p);
    if (n % 2 != 0 || n < 4)
        throw std::invalid_argument("discrete_series: need even n >= 4");
    const Rat last = eta.entries.back();
    if (last == Rat(0))
        throw std::invalid_argument(
            "discrete_series: nu = -s - 1/2 subcase needs a nonzero last entry "
            "of eta");
    if (s > Rat(-1, 2))
        throw std::invalid_argument(
            "discrete_series: need nu = -s - 1/2 >= 0, i.e. s <= -1/2");
    if (s < -last || s > last)
        throw std::invalid_argument("discrete_series: need -" + to_string(last) +
                                    " <= s <= " + to_string(last));
    if (!is_integer(s - last))
        throw std::invalid_argument(
            "discrete_series: need s - (last entry of eta) integral");
    p.param_rat = s;
    p.param_rational = true;
    p.param_real = to_double(s);
    p.j = smallest_zero_index(eta);
    return p;
}

bool has_exact_parameter(const SeriesParam& p) {
    return p.param_rational || p.kind == Series::endpoint;
}

Rat varpi_hat(const SeriesParam& p) { return casimir_M(p.eta, p.n); }

Rat nu_squared_exact(const SeriesParam& p) {
    switch (p.kind) {
        case Series::principal: {
            if (!p.param_rational)
                throw std::invalid_argument("nu_squared_exact: parameter is not rational");
            return -p.param_rat * p.param_rat;
        }
        case Series::complementary: {
            if (!p.param_rational)
                throw std::invalid_argument("nu_squared_exact: parameter is not rational");
            return p.param_rat * p.param_rat;
        }
        case Series::endpoint: {
            const Rat nu = Rat(p.n + 1, 2) - Rat(p.j) + Rat(p.m);
            return nu * nu;
        }
        case Series::discrete: {
            if (p.discrete_case_a)
                return Rat(1, 4);
            const Rat nu = -p.param_rat - Rat(1, 2);
            return nu * nu;
        }
    }
    throw std::logic_error("nu_squared_exact: unknown series");
}

double nu_squared(const SeriesParam& p) {
    if (has_exact_parameter(p))
        return to_double(nu_squared_exact(p));
    const double v = p.param_real;
    return p.kind == Series::principal ? -v * v : v * v;
}

Rat casimir_G_series_exact(const SeriesParam& p) {
    const Rat sum = varpi_hat(p);
    switch (p.kind) {
        case Series::principal:
        case Series::complementary:
            return nu_squared_exact(p) - rho_squared(p.n) + sum;
        case Series::endpoint: {
            const Rat f = Rat((p.m + 1 - p.j)) * Rat((p.m + p.n - p.j));
            return f + sum;
        }
        case Series::discrete: {
            const int half = p.n / 2;
            if (p.discrete_case_a)
                return Rat(half * (half - 1)) + sum;
            const Rat s = p.param_rat;
            return (s + Rat(half)) * (s - Rat(half) + Rat(1)) + sum;
        }
    }
    throw std::logic_error("casimir_G_series_exact: unknown series");
}

double casimir_G_series(const SeriesParam& p) {
    if (has_exact_parameter(p))
        return to_double(casimir_G_series_exact(p));
    return nu_squared(p) - to_double(rho_squared(p.n)) + to_double(varpi_hat(p));
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::imaginary: return "imaginary";
        case Regime::zero: return "zero";
        case Regime::real_small: return "real_small";
        case Regime::real_mid: return "real_mid";
        case Regime::real_large: return "real_large";
    }
    return "unknown";
}

SpectralDatum discriminant_data(double mu, const Rat& varpi,
                                const Rat& varpi_hat_val, double nu_sq, int n) {
    const double d1 = to_double(rho_squared(n)) - (to_double(varpi) - mu);
    const double d2 = nu_sq + to_double(varpi_hat_val) - to_double(varpi);
    if (std::abs(d1 - d2) > kDualFormTol)
        throw std::invalid_argument(
            "discriminant_data: the two discriminant forms disagree (" +
            std::to_string(d1) + " vs " + std::to_string(d2) + ")");

    SpectralDatum d;
    d.n = n;
    d.mu = mu;
    d.varpi = varpi;
    d.varpi_hat = varpi_hat_val;
    d.nu_sq = nu_sq;
    d.D = d1;

    if (std::abs(d.D) <= kZeroTol) {
        d.regime = Regime::zero;
        d.half_integer_flag = true;
    } else if (d.D < 0.0) {
        d.regime = Regime::imaginary;
        d.half_integer_flag = false;
    } else {
        const double r = std::sqrt(d.D);
        if (r <= (n - 3) / 2.0 + kZeroTol)
            d.regime = Regime::real_small;
        else if (r < (n - 1) / 2.0 - kZeroTol)
            d.regime = Regime::real_mid;
        else
            d.regime = Regime::real_large;
        d.half_integer_flag = std::abs(2.0 * r - std::round(2.0 * r)) <= kHalfIntTol;
    }

    const std::complex<double> root =
        d.D >= 0.0 ? std::complex<double>(std::sqrt(std::max(d.D, 0.0)), 0.0)
                   : std::complex<double>(0.0, std::sqrt(-d.D));
    const double base = (1.0 - n) / 2.0;
    d.lambda_plus = base + root;
    d.lambda_minus = base - root;
    return d;
}

SpectralDatum spectral_datum(const SeriesParam& p,
                             const HighestWeight& k_side_eta) {
    return discriminant_data(casimir_G_series(p), casimir_M(k_side_eta, p.n),
                             varpi_hat(p), nu_squared(p), p.n);
}

AdmissibilityResult admissibility_check(double mu, const Rat& tau_casimir) {
    const double lam = -mu + to_double(tau_casimir);
    return {lam, lam >= -1e-12};
}

double sobolev_shift(double norm_sq_s, double mu, const Rat& tau_casimir,
                     int k) {
    if (k < 0)
        throw std::invalid_argument("sobolev_shift: need k >= 0");
    const double base = 1.0 - mu + 2.0 * to_double(tau_casimir);
    if (base <= 0.0)
        throw std::invalid_argument(
            "sobolev_shift: need 1 - mu + 2 tau(Omega_K) > 0, got " +
            std::to_string(base));
    return std::pow(base, k) * norm_sq_s;
}

}  // namespace repn
}  // namespace rank1
