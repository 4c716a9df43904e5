#include "rank1/group_ops.hpp"

#include "rank1/parallel.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>
#include <string>

namespace rank1 {
namespace grp {

namespace {

Mat exp_mat(const Mat& X) { return X.exp(); }

// exp(t a1) in closed form: hyperbolic rotation in the (1, n+1) plane.
Mat exp_t_a1(int n, double t) {
    Mat a = Mat::Identity(n + 1, n + 1);
    a(0, 0) = std::cosh(t);
    a(n, n) = std::cosh(t);
    a(0, n) = std::sinh(t);
    a(n, 0) = std::sinh(t);
    return a;
}

// exp(U) for U in the +1 root space; U^3 = 0 in the defining representation.
Mat exp_nilpotent(const Mat& U) {
    return Mat::Identity(U.rows(), U.cols()) + U + 0.5 * U * U;
}

// Richardson extrapolation of a quantity whose leading error is O(h^2).
template <class Fn>
double richardson(const Fn& value_at, double h) {
    return (4.0 * value_at(0.5 * h) - value_at(h)) / 3.0;
}

struct IwasawaFactors {
    Mat k, a, n;
    double t;
};

IwasawaFactors factorize(const Mat& g, const LieBasis& basis) {
    IwasawaCoords c = iwasawa_decompose(g, basis);
    Mat U = Mat::Zero(g.rows(), g.cols());
    for (int j = 0; j < c.u.size(); j++)
        U += c.u(j) * basis.n_vecs[j];
    return {c.k, exp_t_a1(basis.n, c.t), exp_nilpotent(U), c.t};
}

double second_difference(const TestFunction& f, const Mat& pre, const Mat& X,
                         const Mat& post, double h) {
    const double f0 = f(pre * post);
    auto s = [&](double hh) {
        return (f(pre * exp_mat(hh * X) * post) - 2.0 * f0 +
                f(pre * exp_mat(-hh * X) * post)) /
               (hh * hh);
    };
    return richardson(s, h);
}

double first_difference(const TestFunction& f, const Mat& pre, const Mat& X,
                        const Mat& post, double h) {
    auto s = [&](double hh) {
        return (f(pre * exp_mat(hh * X) * post) -
                f(pre * exp_mat(-hh * X) * post)) /
               (2.0 * hh);
    };
    return richardson(s, h);
}

// Mixed derivative K_Z N_Y via the four-point cross difference on the two
// Iwasawa slots k exp(sZ) a exp(rY) n.
double mixed_difference_KN(const TestFunction& f, const IwasawaFactors& w,
                           const Mat& Z, const Mat& Y, double h) {
    auto s = [&](double hh) {
        Mat kp = w.k * exp_mat(hh * Z);
        Mat km = w.k * exp_mat(-hh * Z);
        Mat np = exp_mat(hh * Y) * w.n;
        Mat nm = exp_mat(-hh * Y) * w.n;
        return (f(kp * w.a * np) - f(kp * w.a * nm) - f(km * w.a * np) +
                f(km * w.a * nm)) /
               (4.0 * hh * hh);
    };
    return richardson(s, h);
}

}  // namespace

bool is_in_group(const Mat& g, double tol) {
    if (g.rows() != g.cols() || g.rows() < 3)
        return false;
    const int n = static_cast<int>(g.rows()) - 1;
    Mat J = lie::minkowski_form(n);
    if ((g.transpose() * J * g - J).cwiseAbs().maxCoeff() > tol)
        return false;
    return g.determinant() > 0.0 && g(n, n) > 0.0;
}

IwasawaCoords iwasawa_decompose(const Mat& g, const LieBasis& basis) {
    const int n = basis.n;
    if (g.rows() != n + 1 || g.cols() != n + 1)
        throw std::invalid_argument("iwasawa_decompose: size mismatch with basis");
    if (!is_in_group(g))
        throw std::invalid_argument(
            "iwasawa_decompose: matrix is not in SO(n,1)^0 (tolerance 1e-8)");

    // A-part: g (e_1 + e_{n+1}) = e^t k (e_1 + e_{n+1}) and k fixes the last
    // coordinate, so the last entry of the image is e^t.
    const double last = g(n, 0) + g(n, n);
    if (last <= 0.0)
        throw std::invalid_argument("iwasawa_decompose: light-cone image degenerate");
    const double t = std::log(last);

    // N-part: the last row of g equals the last row of a n, whose middle block
    // is e^t v with U = sum_i v_i (E_{1,i} - E_{i,1} + E_{i,n+1} + E_{n+1,i}).
    Mat U = Mat::Zero(n + 1, n + 1);
    for (int i = 1; i < n; i++) {
        const double v = g(n, i) * std::exp(-t);
        U(0, i) = v;
        U(i, 0) = -v;
        U(i, n) = v;
        U(n, i) = v;
    }
    Eigen::VectorXd u(n - 1);
    for (int j = 0; j < n - 1; j++)
        u(j) = lie::inner_product(U, basis.n_vecs[j]);

    Mat k = g * exp_nilpotent(-U) * exp_t_a1(n, -t);

    // k should already be block diag(SO(n), 1) up to roundoff; project the
    // rotation block back to the orthogonal group and pin the last row/column.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(k.topLeftCorner(n, n),
                                          Eigen::ComputeFullU | Eigen::ComputeFullV);
    k.topLeftCorner(n, n) = svd.matrixU() * svd.matrixV().transpose();
    k.row(n).setZero();
    k.col(n).setZero();
    k(n, n) = 1.0;

    return {k, t, u};
}

Mat reconstruct(const IwasawaCoords& c, const LieBasis& basis) {
    Mat U = Mat::Zero(basis.n + 1, basis.n + 1);
    for (int j = 0; j < c.u.size(); j++)
        U += c.u(j) * basis.n_vecs[j];
    return c.k * exp_t_a1(basis.n, c.t) * exp_nilpotent(U);
}

double TestFunction::operator()(const Mat& g) const {
    double total = 0.0;
    for (const auto& m : terms) {
        double prod = m.coeff;
        for (const auto& [i, j] : m.entries)
            prod *= g(i, j);
        total += prod;
    }
    return total;
}

TestFunction random_test_function(int n, int max_degree, int n_terms,
                                  std::mt19937_64& rng) {
    if (max_degree < 1 || n_terms < 1)
        throw std::invalid_argument("random_test_function: degree and term count must be >= 1");
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_int_distribution<int> deg(1, max_degree);
    std::uniform_int_distribution<int> idx(0, n);
    TestFunction f;
    f.terms.reserve(n_terms);
    for (int s = 0; s < n_terms; s++) {
        Monomial m;
        m.coeff = coeff(rng);
        const int d = deg(rng);
        for (int q = 0; q < d; q++)
            m.entries.emplace_back(idx(rng), idx(rng));
        f.terms.push_back(std::move(m));
    }
    return f;
}

Mat random_group_element(const LieBasis& basis, std::mt19937_64& rng,
                         double scale, int factors) {
    std::uniform_real_distribution<double> coeff(-scale, scale);
    std::vector<lie::Mat> span;
    span.push_back(basis.a1);
    span.insert(span.end(), basis.k_vecs.begin(), basis.k_vecs.end());
    span.insert(span.end(), basis.p_vecs.begin(), basis.p_vecs.end());
    span.insert(span.end(), basis.m_vecs.begin(), basis.m_vecs.end());
    Mat g = Mat::Identity(basis.n + 1, basis.n + 1);
    for (int q = 0; q < factors; q++) {
        Mat X = Mat::Zero(basis.n + 1, basis.n + 1);
        for (const auto& B : span)
            X += coeff(rng) * B;
        g = g * exp_mat(X);
    }
    return g;
}

double directional_derivative(const TestFunction& f, const Mat& g, const Mat& X,
                              Slot slot, int order, const LieBasis& basis,
                              double h) {
    if (order != 1 && order != 2)
        throw std::invalid_argument("directional_derivative: order must be 1 or 2");
    if (!(h > 0.0))
        throw std::invalid_argument("directional_derivative: h must be positive");

    Mat pre, post;
    switch (slot) {
        case Slot::left:
            pre = Mat::Identity(g.rows(), g.cols());
            post = g;
            break;
        case Slot::right:
            pre = g;
            post = Mat::Identity(g.rows(), g.cols());
            break;
        case Slot::iwasawa_K:
        case Slot::iwasawa_A: {
            IwasawaFactors w = factorize(g, basis);
            pre = w.k;
            post = w.a * w.n;
            break;
        }
        case Slot::iwasawa_N: {
            IwasawaFactors w = factorize(g, basis);
            pre = w.k * w.a;
            post = w.n;
            break;
        }
    }
    return order == 1 ? first_difference(f, pre, X, post, h)
                      : second_difference(f, pre, X, post, h);
}

double apply_casimir_left(const TestFunction& f, const Mat& g,
                          const LieBasis& basis, double h) {
    Mat id = Mat::Identity(g.rows(), g.cols());
    double total = 0.0;
    for (const auto& term : lie::casimir_terms(basis))
        total += term.sign * second_difference(f, id, term.X, g, h);
    return total;
}

double apply_casimir_iwasawa_rhs(const TestFunction& f, const Mat& g,
                                 const LieBasis& basis, CasimirVariant variant,
                                 double h) {
    IwasawaFactors w = factorize(g, basis);
    const double t = w.t;
    const int n = basis.n;

    Mat post_KA = w.a * w.n;
    double total = second_difference(f, w.k, basis.a1, post_KA, h) +
                   (n - 1) * first_difference(f, w.k, basis.a1, post_KA, h);

    const double mixed_factor =
        -2.0 * std::sqrt(2.0) *
        std::exp(variant == CasimirVariant::theorem2 ? -t : -2.0 * t);
    const double sq_factor = 2.0 * std::exp(-2.0 * t);
    Mat pre_N = w.k * w.a;
    for (int j = 0; j < n - 1; j++) {
        total += mixed_factor *
                 mixed_difference_KN(f, w, basis.k_vecs[j], basis.n_vecs[j], h);
        total += sq_factor * second_difference(f, pre_N, basis.n_vecs[j], w.n, h);
    }

    for (const auto& M : basis.m_vecs)
        total -= second_difference(f, w.k, M, post_KA, h);
    return total;
}

VerifyReport verify_casimir_formula(int n, int trials, std::uint64_t seed,
                                    double h) {
    if (trials < 1)
        throw std::invalid_argument("verify_casimir_formula: trials must be >= 1");
    LieBasis basis = lie::build_so_n1_basis(n);

    std::vector<double> err_t2(trials), err_c31(trials);
    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t i) {
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * (i + 1));
        TestFunction f = random_test_function(n, 3, 4, rng);
        Mat g = random_group_element(basis, rng);
        const double lhs = apply_casimir_left(f, g, basis, h);
        const double scale = 1.0 + std::abs(lhs);
        err_t2[i] = std::abs(lhs - apply_casimir_iwasawa_rhs(
                                       f, g, basis, CasimirVariant::theorem2, h)) /
                    scale;
        err_c31[i] = std::abs(lhs - apply_casimir_iwasawa_rhs(
                                        f, g, basis, CasimirVariant::corollary31, h)) /
                     scale;
    });

    auto summarize = [&](const std::vector<double>& errs) {
        VariantReport r{0.0, 0.0};
        for (double e : errs) {
            r.max_rel_err = std::max(r.max_rel_err, e);
            r.mean_rel_err += e;
        }
        r.mean_rel_err /= static_cast<double>(errs.size());
        return r;
    };

    VerifyReport rep;
    rep.n = n;
    rep.trials = trials;
    rep.seed = seed;
    rep.theorem2 = summarize(err_t2);
    rep.corollary31 = summarize(err_c31);
    rep.winner = rep.theorem2.max_rel_err <= rep.corollary31.max_rel_err
                     ? CasimirVariant::theorem2
                     : CasimirVariant::corollary31;
    return rep;
}

}  // namespace grp
}  // namespace rank1
