// Iterated-integral expansion engine.  Solutions of the rank-one ODE are fed
// back into themselves through the J-operators: each recursion level attaches
// a letter (2 or 3) to an operator word, and the accumulated contributions
// organize into a finite exponential expansion plus a remainder whose decay
// improves with the truncation depth.  Past the switch depth the finite
// operators are split into limit and tail parts so that every kept term is a
// lattice exponential e^{(lambda_{+/-} - m) t} (times t in the repeated-root
// case) and the growthless remainder can be fitted for its decay rate.
#pragma once

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rank1/ode_solve.hpp"
#include "rank1/series.hpp"

namespace rank1 {
namespace ode {

/// Operator word over the alphabet {2, 3}; the empty word is the root.
using Word = std::vector<int>;

/// Number of letters equal to 2 (resp. 3) among positions [from, to],
/// 1-based and inclusive.  The coefficient attached to a word depends on
/// these counts: every letter 2 contributes a factor sqrt(2).
int delta2(const Word& word, int from, int to);
int delta3(const Word& word, int from, int to);
int delta2(const Word& word);
int delta3(const Word& word);

enum class Branch { plus, minus, polynomial };

std::string branch_name(Branch b);

struct CoeffKey {
    Branch branch;
    int m;
};
bool operator<(const CoeffKey& a, const CoeffKey& b);
bool operator==(const CoeffKey& a, const CoeffKey& b);

using CoeffMap = std::map<CoeffKey, std::complex<double>>;

struct ExpansionReport {
    CoeffMap coeffs;
    int ell = 0;
    int ell_plus = 0;
    /// (t, |remainder(t)|) on the sampling grid.
    std::vector<std::pair<double, double>> remainder_samples;
    /// Least-squares slope of log|remainder| against t; 0 when the remainder
    /// vanishes identically.
    double fitted_decay = 0.0;
};

/// Classification of sqrt(D) with the same breakpoints used for the spectral
/// data: zero for |D| <= 1e-12, imaginary for D < 0, and real measured
/// against (n-3)/2 and (n-1)/2.
repn::Regime classify_regime(int n, double D);

/// Regime table of switch depths.  ell_plus/ell_minus drive the refined
/// iteration; theorem_ell_plus = floor(Re((n-3)/2 + sqrt(D))) + 3 is the
/// depth constant quoted alongside the final expansion, which differs from
/// the iteration value by a bounded offset.  Both are reported; the engine
/// only ever checks that no tail application diverges before its switch.
struct SwitchDepths {
    int ell_plus = 0;
    int ell_minus = 0;
    int theorem_ell_plus = 0;
};
SwitchDepths switch_depths(const ODEParams& params);

/// Supplies the pair (Theta_minus, Theta_plus) of homogeneous-solution
/// scalars for an operator word.  In the repeated-root case Theta_plus
/// multiplies t e^{lambda t}.  expand_iterated may invoke the provider
/// concurrently when RANK1_NUM_THREADS > 1.
using ThetaProvider = std::function<std::pair<std::complex<double>, std::complex<double>>(
    const Word&)>;

/// One solve-normalized recursion step for a letter: for D != 0 the
/// difference -(J_letter^+ - J_letter^-)/sqrt(D) in the requested variant,
/// for D = 0 twice the critical operator.  Applying the finite step to the
/// forcing of a level reproduces that level's particular solution.
ExpPoly expansion_step(int letter, JVariant variant, const ExpPoly& P,
                       const ODEParams& params);

/// Truncated synthetic model.  Words of length depth_cap carry pure
/// Theta-seeds; below that, each solution is its seed plus the finite step
/// applied to its forcing, and each forcing combines the two children:
/// G_w = -sqrt(2) I_{w2} - e^{-t} I_{w3}.
ExpPoly model_solution(const ODEParams& params, const ThetaProvider& theta,
                       int depth_cap, const Word& word);
ExpPoly model_forcing(const ODEParams& params, const ThetaProvider& theta,
                      int depth_cap, const Word& word);

/// Runs the refined iteration to depth ell and collects the expansion.
///
/// Requires ell > ell_plus (the engine's switch depth floor((n-3)/2) + 1) and
/// a spectral regime the finite/tail split converges in: imaginary sqrt(D),
/// D = 0, or real sqrt(D) < 1/2.  Larger real sqrt(D) needs the two-sided
/// scheme and is rejected.  The remainder is the exact difference between
/// the truncated model solution and the expansion; a divergent tail before
/// the switch depth or a coefficient off the exponent lattice signals an
/// internal bookkeeping error and throws std::logic_error.
ExpansionReport expand_iterated(const ODEParams& params, const ThetaProvider& theta,
                                int ell);

/// Rewrites a lattice ExpPoly as coefficients C_m per branch: exponents must
/// match lambda_minus - m or lambda_plus - m (m >= 0, tolerance 1e-9), with
/// the minus branch preferred when both fit; t e^{(lambda_minus - m) t} terms
/// land in the polynomial branch.  Terms with t-power >= 2 or exponents off
/// the lattice are rejected.
CoeffMap collect_coefficients(const ExpPoly& P, const ODEParams& params);

/// Inverse of collect_coefficients under the same anchoring conventions.
ExpPoly rebuild_from_coefficients(const CoeffMap& coeffs, const ODEParams& params);

/// Drops the plus-branch coefficients a discrete cocompact quotient cannot
/// see: entries with m < max(0, Re sqrt(D) - nu_gamma), and the whole plus
/// branch once Re sqrt(D) >= (n-1)/2.  Requires 0 <= nu_gamma < (n-1)/2.
ExpansionReport filter_coefficients(const ExpansionReport& report, double nu_gamma,
                                    const ODEParams& params);

/// The two printed conventions for the truncation shifts (m_+, m_-) quoted
/// with the main expansion statements; they disagree by a bounded constant
/// and neither is adjudicated here.
enum class MainShiftVariant { vector_theorem, pointwise_theorem };
std::pair<int, int> main_shifts(MainShiftVariant variant, int ell, int n,
                                std::complex<double> sqrt_D);

}  // namespace ode
}  // namespace rank1
