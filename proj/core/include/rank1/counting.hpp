// Weyl dimensions, enumeration of K-types below a Casimir threshold, the
// branching counting function with growth-exponent fit, and dyadic-shell
// partial sums for summability experiments.
#pragma once

#include <vector>

#include "rank1/weights.hpp"

namespace rank1 {
namespace count {

/// Exact dimension of the SO(m) irreducible with highest weight w, via the
/// product over positive roots. Throws std::logic_error if the product fails
/// to clear denominators (wrong root data would).
long long weyl_dimension(const repn::HighestWeight& w);

/// All dominant weights of SO(n) with Casimir eigenvalue <= W, sorted
/// lexicographically by entries. Half-odd (spin) weights are included by
/// default; pass include_half_integral = false to model SO(n) proper rather
/// than its double cover.
std::vector<repn::HighestWeight> enumerate_K_types(
    int n, double W, bool include_half_integral = true);

struct CountReport {
    int n;
    std::vector<double> thresholds;
    std::vector<long long> counts;
    double fitted_exponent;
    repn::Rat target_exponent;
};

/// Target slope (|R_K^+| + r_K)/2 of log S against log W for K = SO(n).
repn::Rat count_target_exponent(int n);

/// S(W) = sum of mult_bound * dim(tau) over integral K-types tau with
/// Casimir <= W, on the given threshold grid (>= 4 points spanning at least
/// two decades). The growth exponent is an ordinary least-squares slope in
/// log-log coordinates, using the grid points with S >= 10.
CountReport branching_count_S(int n, const std::vector<double>& thresholds,
                              long long mult_bound);

struct SpectrumEntry {
    double mu;
    repn::Rat varpi;
    long long multiplicity;
};

/// Synthetic eigenvalue data for summability experiments: each entry carries
/// a Laplace eigenvalue mu, an M-type Casimir varpi, and a multiplicity.
/// Every entry must satisfy 1 - mu + 2 varpi > 0.
struct SyntheticSpectrum {
    std::vector<SpectrumEntry> entries;
};

/// Cumulative sums of mult * (1 - mu + 2 varpi)^s over dyadic shells
/// 2^j <= 1 - mu + 2 varpi < 2^{j+1}, j = 0..shells-1 (bases below 1 count
/// toward shell 0). Element k of the result is the total through shell k.
std::vector<double> summability_partial_sums(const SyntheticSpectrum& spec,
                                             double s_exponent, int shells);

}  // namespace count
}  // namespace rank1
