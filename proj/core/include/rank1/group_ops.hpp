// Group-level operations on SO(n,1): Iwasawa decomposition, directional
// derivatives of test functions in several coordinate slots, and the
// numerical cross-check of the Casimir operator in Iwasawa coordinates.
#pragma once

#include "rank1/lie_basis.hpp"

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace rank1 {
namespace grp {

using lie::LieBasis;
using lie::Mat;

/// Coordinates of g = k exp(t a1) exp(sum_i u_i n_i), with n_i the
/// orthonormal root vectors of the supplied basis.
struct IwasawaCoords {
    Mat k;
    double t;
    Eigen::VectorXd u;
};

/// Whether g lies in SO(n,1)^0: g^T J g = J up to tolerance, det g > 0 and
/// g_{n+1,n+1} > 0 (the identity component preserves the upper light cone).
bool is_in_group(const Mat& g, double tol = 1e-8);

/// Decompose g = k a n. The A- and N-parts are read off the action of g on
/// the null vector e_1 + e_{n+1} and the last row of g; k is then recovered
/// as g (a n)^{-1} and its rotation block re-orthogonalized by a polar
/// projection. Throws if g fails is_in_group.
IwasawaCoords iwasawa_decompose(const Mat& g, const LieBasis& basis);

/// k exp(t a1) exp(sum u_i n_i).
Mat reconstruct(const IwasawaCoords& c, const LieBasis& basis);

/// Sparse polynomial in the matrix entries of g, used as the smooth test
/// function for all derivative checks.
struct Monomial {
    double coeff;
    std::vector<std::pair<int, int>> entries;  // product of g(i,j) factors
};

struct TestFunction {
    std::vector<Monomial> terms;
    double operator()(const Mat& g) const;
};

/// Random sparse polynomial with n_terms monomials of degree 1..max_degree
/// and coefficients uniform in [-1,1].
TestFunction random_test_function(int n, int max_degree, int n_terms,
                                  std::mt19937_64& rng);

/// Random element of SO(n,1)^0, a product of `factors` exponentials of
/// algebra elements with coordinates uniform in [-scale, scale].
Mat random_group_element(const LieBasis& basis, std::mt19937_64& rng,
                         double scale = 0.3, int factors = 2);

/// Where the exponential curve exp(sX) is inserted when differentiating:
/// on the left of g, on the right of g, or in one of the three Iwasawa
/// coordinate slots of g = k a n (K and A insert after k, N after a).
enum class Slot { left, right, iwasawa_K, iwasawa_A, iwasawa_N };

/// Central-difference directional derivative of order 1 or 2 along exp(sX)
/// in the given slot, Richardson-extrapolated over step sizes {h, h/2}.
double directional_derivative(const TestFunction& f, const Mat& g, const Mat& X,
                              Slot slot, int order, const LieBasis& basis,
                              double h = 1e-3);

/// Left action of the Casimir element: sum_i sign_i d^2/ds^2 f(exp(s X_i) g)
/// over the orthonormal term list of the basis.
double apply_casimir_left(const TestFunction& f, const Mat& g,
                          const LieBasis& basis, double h = 1e-3);

/// The two printed shapes of the Casimir operator in Iwasawa coordinates.
/// They differ only in the power of e^{-t} on the mixed K N term.
enum class CasimirVariant { theorem2, corollary31 };

/// Right-hand side of the Iwasawa-coordinate Casimir formula:
///   A^2 + (n-1) A + sum_j [ -2 sqrt(2) e^{-ct} K_{k_j} N_{n_j}
///                           + 2 e^{-2t} N_{n_j}^2 ] - sum_j K_{m_j}^2,
/// with c = 1 for theorem2 and c = 2 for corollary31.
double apply_casimir_iwasawa_rhs(const TestFunction& f, const Mat& g,
                                 const LieBasis& basis, CasimirVariant variant,
                                 double h = 1e-3);

struct VariantReport {
    double max_rel_err;
    double mean_rel_err;
};

struct VerifyReport {
    int n;
    int trials;
    std::uint64_t seed;
    VariantReport theorem2;
    VariantReport corollary31;
    CasimirVariant winner;
};

/// Monte-Carlo adjudication of the two variants: random test functions and
/// group elements, relative error |lhs - rhs| / (1 + |lhs|) per trial.
/// Trials are independent and seeded individually, so the report does not
/// depend on the number of worker threads.
VerifyReport verify_casimir_formula(int n, int trials, std::uint64_t seed,
                                    double h = 1e-3);

}  // namespace grp
}  // namespace rank1
