#include "rank1/group_ops.hpp"

#include "doctest.h"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <random>

using namespace rank1;
using namespace rank1::grp;
using lie::LieBasis;
using lie::Mat;

namespace {

TestFunction entry_function(int i, int j) {
    TestFunction f;
    f.terms.push_back({1.0, {{i, j}}});
    return f;
}

}  // namespace

TEST_CASE("decomposition of distinguished elements") {
    LieBasis b = lie::build_so_n1_basis(3);

    SUBCASE("identity") {
        IwasawaCoords c = iwasawa_decompose(Mat::Identity(4, 4), b);
        CHECK(c.t == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(c.u.cwiseAbs().maxCoeff() <= 1e-14);
        CHECK((c.k - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-12);
    }

    SUBCASE("pure A element") {
        Mat g = (0.7 * b.a1).exp();
        IwasawaCoords c = iwasawa_decompose(g, b);
        CHECK(c.t == doctest::Approx(0.7).epsilon(1e-12));
        CHECK(c.u.cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((c.k - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-10);
    }

    SUBCASE("pure N element") {
        Mat g = (1.3 * b.n_vecs[1]).exp();
        IwasawaCoords c = iwasawa_decompose(g, b);
        CHECK(c.t == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(c.u(0) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(c.u(1) == doctest::Approx(1.3).epsilon(1e-12));
        CHECK((c.k - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-10);
    }

    SUBCASE("pure K element stays in K") {
        Mat g = (0.9 * b.m_vecs[0]).exp();
        IwasawaCoords c = iwasawa_decompose(g, b);
        CHECK(c.t == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(c.u.cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((c.k - g).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("random elements decompose and reconstruct") {
    std::mt19937_64 rng(2024);
    for (int n : {3, 4, 5}) {
        LieBasis b = lie::build_so_n1_basis(n);
        for (int trial = 0; trial < 40; trial++) {
            Mat g = random_group_element(b, rng, 0.5, 3);
            REQUIRE(is_in_group(g));
            IwasawaCoords c = iwasawa_decompose(g, b);
            Mat back = reconstruct(c, b);
            CHECK((back - g).norm() <= 1e-8 * g.norm());
            // k is block diag(SO(n), 1)
            Mat block = c.k.topLeftCorner(n, n);
            CHECK((block * block.transpose() - Mat::Identity(n, n))
                      .cwiseAbs()
                      .maxCoeff() <= 1e-10);
            CHECK(c.k(n, n) == doctest::Approx(1.0));
            CHECK(block.determinant() == doctest::Approx(1.0).epsilon(1e-8));
        }
    }
}

TEST_CASE("decomposition rejects non-group input") {
    LieBasis b = lie::build_so_n1_basis(3);
    Mat bad = Mat::Identity(4, 4);
    bad(0, 0) = 2.0;
    CHECK_THROWS_AS(iwasawa_decompose(bad, b), std::invalid_argument);
    CHECK_FALSE(is_in_group(bad));
}

TEST_CASE("directional derivatives against analytic values") {
    LieBasis b = lie::build_so_n1_basis(3);
    std::mt19937_64 rng(7);
    Mat g = random_group_element(b, rng, 0.4, 2);

    SUBCASE("left slot, first and second order") {
        for (auto [i, j] : {std::pair{0, 0}, std::pair{1, 3}, std::pair{3, 2}}) {
            TestFunction f = entry_function(i, j);
            Mat X = b.p_vecs[0];
            const double d1 =
                directional_derivative(f, g, X, Slot::left, 1, b);
            CHECK(d1 == doctest::Approx((X * g)(i, j)).epsilon(1e-8));
            const double d2 =
                directional_derivative(f, g, X, Slot::left, 2, b);
            CHECK(d2 == doctest::Approx((X * X * g)(i, j)).epsilon(1e-7));
        }
    }

    SUBCASE("right slot") {
        TestFunction f = entry_function(2, 1);
        Mat X = b.k_vecs[1];
        const double d1 = directional_derivative(f, g, X, Slot::right, 1, b);
        CHECK(d1 == doctest::Approx((g * X)(2, 1)).epsilon(1e-8));
    }

    SUBCASE("A slot on a pure A element") {
        Mat a = (0.4 * b.a1).exp();
        TestFunction f = entry_function(0, 0);
        // f(exp((0.4+s) a1)) = cosh(0.4+s)
        const double d1 =
            directional_derivative(f, a, b.a1, Slot::iwasawa_A, 1, b);
        CHECK(d1 == doctest::Approx(std::sinh(0.4)).epsilon(1e-9));
        const double d2 =
            directional_derivative(f, a, b.a1, Slot::iwasawa_A, 2, b);
        CHECK(d2 == doctest::Approx(std::cosh(0.4)).epsilon(1e-8));
    }

    SUBCASE("constant function has zero derivative") {
        TestFunction f;
        f.terms.push_back({2.5, {}});
        for (Slot s : {Slot::left, Slot::right, Slot::iwasawa_K, Slot::iwasawa_N})
            for (int order : {1, 2})
                CHECK(directional_derivative(f, g, b.k_vecs[0], s, order, b) ==
                      doctest::Approx(0.0).epsilon(1e-12));
    }

    SUBCASE("step-size robustness") {
        TestFunction f = random_test_function(3, 3, 4, rng);
        Mat X = b.n_vecs[0];
        const double a = directional_derivative(f, g, X, Slot::left, 2, b, 1e-3);
        const double c = directional_derivative(f, g, X, Slot::left, 2, b, 5e-4);
        CHECK(a == doctest::Approx(c).epsilon(1e-6));
    }

    SUBCASE("parameter validation") {
        TestFunction f = entry_function(0, 0);
        CHECK_THROWS_AS(
            directional_derivative(f, g, b.a1, Slot::left, 3, b),
            std::invalid_argument);
        CHECK_THROWS_AS(
            directional_derivative(f, g, b.a1, Slot::left, 1, b, 0.0),
            std::invalid_argument);
    }
}

TEST_CASE("Casimir is central: left and right application agree") {
    std::mt19937_64 rng(99);
    LieBasis b = lie::build_so_n1_basis(3);
    for (int trial = 0; trial < 3; trial++) {
        TestFunction f = random_test_function(3, 3, 4, rng);
        Mat g = random_group_element(b, rng);
        const double left = apply_casimir_left(f, g, b);
        double right = 0.0;
        for (const auto& term : lie::casimir_terms(b))
            right += term.sign *
                     directional_derivative(f, g, term.X, Slot::right, 2, b);
        CHECK(std::abs(left - right) <= 1e-5 * (1.0 + std::abs(left)));
    }
}

TEST_CASE("Iwasawa Casimir formula, theorem variant, small sample") {
    VerifyReport rep = verify_casimir_formula(3, 12, 424242);
    CHECK(rep.theorem2.max_rel_err <= 1e-4);
    CHECK(rep.winner == CasimirVariant::theorem2);
    CHECK(rep.corollary31.max_rel_err > rep.theorem2.max_rel_err);
}

TEST_CASE("verify report is independent of the worker count") {
    VerifyReport a = verify_casimir_formula(3, 6, 7);
    VerifyReport c = verify_casimir_formula(3, 6, 7);
    CHECK(a.theorem2.max_rel_err == c.theorem2.max_rel_err);
    CHECK(a.corollary31.mean_rel_err == c.corollary31.mean_rel_err);
}
