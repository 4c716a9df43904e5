// Highest weights of SO(m), their Casimir eigenvalues, and the multiplicity-
// one branching from K = SO(n) to M = SO(n-1).
#pragma once

#include "rank1/rational.hpp"

#include <vector>

namespace rank1 {
namespace repn {

/// Dominant highest weight of SO(m), written in the standard epsilon
/// coordinates: rank = floor(m/2) entries, nonincreasing, all integers or all
/// half-odd integers. For even m the last entry may be negative with
/// |last| <= previous; for odd m all entries are >= 0.
struct HighestWeight {
    int m;                     ///< weight of SO(m)
    std::vector<Rat> entries;  ///< epsilon coordinates, length floor(m/2)
};

/// Throws std::invalid_argument naming the violated condition if w is not a
/// dominant weight in the sense above.
void validate_dominant(const HighestWeight& w);

/// Convenience constructor that validates.
HighestWeight make_weight(int m, std::vector<Rat> entries);

/// Casimir eigenvalue <L+sigma, L+sigma> - <sigma, sigma> of the irreducible
/// with highest weight w, where sigma is the half sum of positive roots:
/// sigma_i = (m - 2i)/2 for both parities.
Rat casimir_so(const HighestWeight& w);

/// Casimir of a K = SO(n) type (w.m must equal n).
Rat casimir_K(const HighestWeight& w, int n);

/// Casimir of an M = SO(n-1) type (w.m must equal n-1).
Rat casimir_M(const HighestWeight& w, int n);

/// Whether the interlacing branching condition holds between a K-type tau
/// (weight of SO(n)) and an M-type eta (weight of SO(n-1)). Both weights are
/// validated; mixed integer/half-odd pairs never interlace.
bool branching_interlaces(const HighestWeight& tau, const HighestWeight& eta,
                          int n);

/// All M-types appearing in tau|_M (each with multiplicity one), sorted
/// lexicographically.
std::vector<HighestWeight> branch_K_to_M(const HighestWeight& tau, int n);

/// Difference tau(Omega_K) - eta(Omega_M) for an interlacing pair, evaluated
/// through the telescoped per-coordinate closed form and cross-checked
/// exactly against the direct difference of Casimir values. Nonnegative for
/// every branching pair; the inputs must interlace.
Rat km_casimir_gap(const HighestWeight& tau, const HighestWeight& eta, int n);

}  // namespace repn
}  // namespace rank1
