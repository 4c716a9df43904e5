// Structured bases for the Lie algebra so(n,1): restricted-root spaces,
// Cartan decomposition and the term list of the Casimir element.
#pragma once

#include <Eigen/Dense>
#include <vector>

namespace rank1 {
namespace lie {

using Mat = Eigen::MatrixXd;

/// Basis of so(n,1) adapted to the restricted-root decomposition
/// g = g_{-1} + (m + a) + g_{+1} and the Cartan decomposition g = k + p.
/// All members are (n+1)x(n+1) real matrices X with X^T J + J X = 0,
/// J = diag(1,...,1,-1). The inner product making everything below
/// orthonormal is inner_product() = Tr(X Y^T)/2, normalized so that
/// <a1, a1> = 1.
struct LieBasis {
    int n;                         ///< G = SO(n,1), so matrices have size n+1
    Mat a1;                        ///< generator of the split Cartan a
    std::vector<Mat> n_vecs;       ///< orthonormal basis of g_{+1}, size n-1
    std::vector<Mat> theta_n_vecs; ///< images under the Cartan involution, span g_{-1}
    std::vector<Mat> k_vecs;       ///< (n_i + theta n_i)/sqrt(2), inside k
    std::vector<Mat> p_vecs;       ///< (n_i - theta n_i)/sqrt(2), inside p
    std::vector<Mat> m_vecs;       ///< orthonormal basis of m = so(n-1)

    /// dim so(n,1) = n(n+1)/2
    int dim() const { return n * (n + 1) / 2; }
};

/// One summand of the Casimir element written in an orthonormal basis:
/// Omega = sum_i sign_i X_i^2 with sign = +1 on p-directions and a,
/// sign = -1 on k-directions (the form is negative definite on k).
struct CasimirTerm {
    int sign;
    Mat X;
};

/// Whether X lies in so(n,1) (i.e. X^T J + J X = 0) up to entrywise tolerance.
bool is_in_so_n1(const Mat& X, double tol = 1e-10);

/// The defining involution J = diag(1,...,1,-1) of size (n+1).
Mat minkowski_form(int n);

/// Build the adapted basis for so(n,1). The root vectors n_i are obtained from
/// the +1 eigenspace of ad(a1) by a dense symmetric eigensolve followed by
/// Gram-Schmidt, so repeated calls give identical output. Requires n >= 2.
LieBasis build_so_n1_basis(int n);

/// Matrix commutator [X, Y].
Mat bracket(const Mat& X, const Mat& Y);

/// Killing form B(X,Y) = Tr(ad X . ad Y), evaluated by expressing both
/// adjoint maps in an orthonormal spanning basis of so(n,1). For so(n,1)
/// this equals (n-1) Tr(XY); the redundancy is deliberate, the closed form
/// is what the tests compare against.
double killing_form(const Mat& X, const Mat& Y);

/// Invariant inner product <X,Y> = -B(X, theta Y)/(2(n-1)) = Tr(X Y^T)/2.
double inner_product(const Mat& X, const Mat& Y);

/// Cartan involution theta(X) = -X^T.
Mat cartan_involution(const Mat& X);

/// Casimir term list in the concatenated orthonormal basis
/// [a1, k_1..k_{n-1}, p_1..p_{n-1}, m_1..m_dim(m)].
std::vector<CasimirTerm> casimir_terms(const LieBasis& basis);

}  // namespace lie
}  // namespace rank1
