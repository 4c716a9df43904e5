#include "rank1/lie_basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rank1 {
namespace lie {

namespace {

// Orthonormal spanning basis used internally: rotations E_ij - E_ji for
// 1 <= i < j <= n followed by boosts E_{i,n+1} + E_{n+1,i}. Both families
// have unit norm under Tr(X Y^T)/2 and are mutually orthogonal.
std::vector<Mat> spanning_basis(int n) {
    std::vector<Mat> basis;
    basis.reserve(n * (n + 1) / 2);
    for (int i = 0; i < n; i++)
        for (int j = i + 1; j < n; j++) {
            Mat X = Mat::Zero(n + 1, n + 1);
            X(i, j) = 1.0;
            X(j, i) = -1.0;
            basis.push_back(X);
        }
    for (int i = 0; i < n; i++) {
        Mat X = Mat::Zero(n + 1, n + 1);
        X(i, n) = 1.0;
        X(n, i) = 1.0;
        basis.push_back(X);
    }
    return basis;
}

// Matrix of ad(X) in the given orthonormal basis.
Eigen::MatrixXd ad_matrix(const Mat& X, const std::vector<Mat>& basis) {
    const int d = static_cast<int>(basis.size());
    Eigen::MatrixXd A(d, d);
    for (int k = 0; k < d; k++) {
        Mat bk = bracket(X, basis[k]);
        for (int j = 0; j < d; j++)
            A(j, k) = inner_product(bk, basis[j]);
    }
    return A;
}

void require_square(const Mat& X, const char* who) {
    if (X.rows() != X.cols() || X.rows() < 3)
        throw std::invalid_argument(std::string(who) +
                                    ": expected a square matrix of size >= 3");
}

}  // namespace

bool is_in_so_n1(const Mat& X, double tol) {
    if (X.rows() != X.cols() || X.rows() < 3)
        return false;
    const int n = static_cast<int>(X.rows()) - 1;
    Mat J = minkowski_form(n);
    return (X.transpose() * J + J * X).cwiseAbs().maxCoeff() <= tol;
}

Mat minkowski_form(int n) {
    Mat J = Mat::Identity(n + 1, n + 1);
    J(n, n) = -1.0;
    return J;
}

LieBasis build_so_n1_basis(int n) {
    if (n < 2)
        throw std::invalid_argument("build_so_n1_basis: need n >= 2, got " +
                                    std::to_string(n));
    LieBasis b;
    b.n = n;
    b.a1 = Mat::Zero(n + 1, n + 1);
    b.a1(0, n) = 1.0;
    b.a1(n, 0) = 1.0;

    // Restricted-root space g_{+1}: +1 eigenspace of ad(a1). The adjoint map
    // is self-adjoint for the chosen inner product (a1 is symmetric), so a
    // symmetric eigensolver applies and its output is deterministic.
    std::vector<Mat> span = spanning_basis(n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ad_matrix(b.a1, span));
    if (es.info() != Eigen::Success)
        throw std::runtime_error("build_so_n1_basis: eigensolver failed");

    const int d = static_cast<int>(span.size());
    std::vector<Mat> plus;
    for (int k = 0; k < d; k++) {
        if (std::abs(es.eigenvalues()(k) - 1.0) < 0.5) {
            Mat X = Mat::Zero(n + 1, n + 1);
            for (int j = 0; j < d; j++)
                X += es.eigenvectors()(j, k) * span[j];
            plus.push_back(X);
        }
    }
    if (static_cast<int>(plus.size()) != n - 1)
        throw std::runtime_error("build_so_n1_basis: +1 eigenspace has dimension " +
                                 std::to_string(plus.size()) + ", expected " +
                                 std::to_string(n - 1));

    // Gram-Schmidt; the eigenvectors are orthonormal already, this guards
    // against roundoff in the basis reconstruction above.
    for (auto& X : plus) {
        for (const auto& Y : b.n_vecs)
            X -= inner_product(X, Y) * Y;
        double norm = std::sqrt(inner_product(X, X));
        if (norm < 1e-12)
            throw std::runtime_error("build_so_n1_basis: degenerate root vector");
        b.n_vecs.push_back(X / norm);
    }

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (const auto& N : b.n_vecs) {
        Mat tN = cartan_involution(N);
        b.theta_n_vecs.push_back(tN);
        b.k_vecs.push_back((N + tN) * inv_sqrt2);
        b.p_vecs.push_back((N - tN) * inv_sqrt2);
    }

    for (int i = 1; i < n; i++)
        for (int j = i + 1; j < n; j++) {
            Mat X = Mat::Zero(n + 1, n + 1);
            X(i, j) = 1.0;
            X(j, i) = -1.0;
            b.m_vecs.push_back(X);
        }
    return b;
}

Mat bracket(const Mat& X, const Mat& Y) {
    if (X.rows() != Y.rows() || X.cols() != Y.cols())
        throw std::invalid_argument("bracket: dimension mismatch");
    return X * Y - Y * X;
}

double killing_form(const Mat& X, const Mat& Y) {
    require_square(X, "killing_form");
    if (Y.rows() != X.rows() || Y.cols() != X.cols())
        throw std::invalid_argument("killing_form: dimension mismatch");
    const int n = static_cast<int>(X.rows()) - 1;
    std::vector<Mat> span = spanning_basis(n);
    Eigen::MatrixXd AX = ad_matrix(X, span);
    Eigen::MatrixXd AY = ad_matrix(Y, span);
    return (AX * AY).trace();
}

double inner_product(const Mat& X, const Mat& Y) {
    return 0.5 * (X * Y.transpose()).trace();
}

Mat cartan_involution(const Mat& X) {
    require_square(X, "cartan_involution");
    return -X.transpose();
}

std::vector<CasimirTerm> casimir_terms(const LieBasis& basis) {
    std::vector<CasimirTerm> terms;
    terms.reserve(basis.dim());
    terms.push_back({+1, basis.a1});
    for (const auto& K : basis.k_vecs)
        terms.push_back({-1, K});
    for (const auto& P : basis.p_vecs)
        terms.push_back({+1, P});
    for (const auto& M : basis.m_vecs)
        terms.push_back({-1, M});
    return terms;
}

}  // namespace lie
}  // namespace rank1
