#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sorption/linalg.hpp"
#include "sorption/quadrature.hpp"
#include "sorption/rng.hpp"

using namespace sorption;

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
    // order n is exact through degree 2n-1
    auto poly = [](double x) { return 5 * x * x * x * x - 2 * x * x + x - 3; };
    const double exact = 2.0 * (5.0 / 5.0 - 2.0 / 3.0 - 3.0);
    CHECK(integrate_composite(poly, -1, 1, 1, 8) == doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("adaptive quadrature converges and reports") {
    auto f = [](double x) { return std::exp(-x) * std::sin(8 * x); };
    const QuadResult r = integrate_adaptive(f, 0.0, 3.0, 32);
    CHECK(r.converged);
    // exact: integral of e^-x sin(8x) = [e^-x(-sin(8x) - 8cos(8x))/65]
    auto F = [](double x) { return std::exp(-x) * (-std::sin(8 * x) - 8 * std::cos(8 * x)) / 65.0; };
    CHECK(r.value == doctest::Approx(F(3.0) - F(0.0)).epsilon(1e-9));
}

TEST_CASE("graded quadrature handles a steep upper end") {
    // integral of (1 - x)^(-1/2) over [0, b]: 2 - 2 sqrt(1-b)
    const double b = 1.0 - 1e-6;
    auto f = [](double x) { return 1.0 / std::sqrt(1.0 - x); };
    const QuadResult r = integrate_graded_upper(f, 0.0, b, 40, 32);
    CHECK(r.value == doctest::Approx(2.0 - 2.0 * std::sqrt(1.0 - b)).epsilon(1e-8));
}

TEST_CASE("small dense solve and inverse") {
    Matrix A(3);
    const double vals[3][3] = {{4, 1, 2}, {1, 3, 0}, {2, 0, 5}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) A(i, j) = vals[i][j];
    std::vector<double> b{1, 2, 3}, x;
    REQUIRE(solve(A, b, x));
    for (int i = 0; i < 3; ++i) {
        double acc = 0;
        for (int j = 0; j < 3; ++j) acc += vals[i][j] * x[j];
        CHECK(acc == doctest::Approx(b[i]).epsilon(1e-12));
    }
    Matrix inv;
    REQUIRE(invert(A, inv));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double acc = 0;
            for (int k = 0; k < 3; ++k) acc += vals[i][k] * inv(k, j);
            CHECK(acc == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
        }
}

TEST_CASE("singular matrix is reported") {
    Matrix A(2);
    A(0, 0) = 1;
    A(0, 1) = 2;
    A(1, 0) = 2;
    A(1, 1) = 4;
    Matrix inv;
    CHECK_FALSE(invert(A, inv));
    CHECK(std::isinf(condition1(A)));
}

TEST_CASE("symmetric eigenvalues") {
    Matrix A(2);
    A(0, 0) = 2;
    A(0, 1) = 1;
    A(1, 0) = 1;
    A(1, 1) = 2;
    const auto ev = symmetric_eigenvalues(A);
    CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("rng streams are deterministic and distinct") {
    Rng a(123), b(123), c(124);
    bool all_same = true, any_diff_seed = false;
    for (int i = 0; i < 1000; ++i) {
        const double va = a.uniform(), vb = b.uniform(), vc = c.uniform();
        all_same = all_same && (va == vb);
        any_diff_seed = any_diff_seed || (va != vc);
        CHECK(va >= 0.0);
        CHECK(va < 1.0);
    }
    CHECK(all_same);
    CHECK(any_diff_seed);
}

TEST_CASE("halton fills the unit square evenly") {
    double sx = 0, sy = 0;
    const int n = 512;
    for (int i = 1; i <= n; ++i) {
        const auto p = halton_point(i, 2);
        sx += p[0];
        sy += p[1];
    }
    CHECK(sx / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(sy / n == doctest::Approx(0.5).epsilon(0.01));
}
