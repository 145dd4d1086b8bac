#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sorption/sensitivity.hpp"

using namespace sorption;

TEST_CASE("nu_local of a one-parameter linear toy model is a^2 * width") {
    // f = p * a has theta = a independent of p; emulate via SM with p2 pinned:
    // instead check the width scaling directly on SM's p1 (theta = 1).
    const ParamBox box{{0.0, 0.04}, {10.0, 0.20}};  // p1 interval width 10
    const ParamVector nominal{5.0, 0.1};
    const QuadResult r = nu_local(ModelId::SM, box, nominal, 0, 0.5);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(10.0).epsilon(1e-10));  // 1^2 * width
    // and SM's p2 interval: theta2 = -ln(1-a), constant in p
    const QuadResult r2 = nu_local(ModelId::SM, box, nominal, 1, 0.5);
    const double th = std::log(1.0 - 0.5);
    CHECK(r2.value == doctest::Approx(th * th * 0.16).epsilon(1e-10));
}

TEST_CASE("degenerate parameter interval collapses to width * theta^2") {
    ParamBox box = prior_box(ModelId::BET);
    const ParamVector nominal = box.midpoint();
    const double eps = 1e-7;
    box.lo[1] = nominal[1];
    box.hi[1] = nominal[1] + eps;
    const double th = eval_grad(ModelId::BET, nominal, 0.5)[1];
    const QuadResult r = nu_local(ModelId::BET, box, nominal, 1, 0.5);
    CHECK(r.value == doctest::Approx(eps * th * th).epsilon(1e-6));
}

TEST_CASE("GAB third parameter is orders of magnitude less influential") {
    const ParamBox box = prior_box(ModelId::GAB);
    const ParamVector mid = box.midpoint();
    const double nu1 = nu_local(ModelId::GAB, box, mid, 0, 0.5).value;
    const double nu3 = nu_local(ModelId::GAB, box, mid, 2, 0.5).value;
    CHECK(nu3 / nu1 <= 1e-4);
}

TEST_CASE("gamma_local normalises and is ratio-invariant") {
    const ParamBox box = prior_box(ModelId::GAB);
    const ParamVector mid = box.midpoint();
    for (double a : {0.1, 0.5, 0.9}) {
        const auto g = gamma_local(ModelId::GAB, box, mid, a);
        double sum = 0.0;
        for (double v : g) sum += v;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(g[0] > g[1]);
        CHECK(g[1] > g[2]);
    }
}

TEST_CASE("MADS local quadrature reports the pole crossing") {
    const ParamBox box = prior_box(ModelId::MADS);
    const ParamVector mid = box.midpoint();
    CHECK_THROWS_AS(nu_local(ModelId::MADS, box, mid, 0, 0.9), SingularityError);
    CHECK_NOTHROW(nu_local(ModelId::MADS, box, mid, 0, 0.3));
}

TEST_CASE("gamma_point sums to one and stays finite near steep regions") {
    const ParamVector mid = prior_box(ModelId::MADS).midpoint();
    for (double a : {0.05, 0.5, 0.9}) {
        const auto g = gamma_point(ModelId::MADS, mid, a);
        CHECK(g[0] + g[1] == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("gamma_total reproduces the published screening table") {
    struct Row {
        ModelId m;
        std::vector<double> expect;  // published values; entries < 0 skipped
    };
    // tolerance 0.05 on entries >= 0.01 per the published table
    const std::vector<Row> rows = {
        {ModelId::GAB, {0.89, 0.10, -1}},
        {ModelId::OSW, {0.975, 0.025}},
        {ModelId::BET, {0.99, -1}},
        {ModelId::SM, {0.48, 0.52}},
        {ModelId::MADS, {0.54, 0.46}},
        {ModelId::FX, {-1, -1, -1, 0.98}},
    };
    for (const auto& row : rows) {
        const ParamBox box = prior_box(row.m);
        const auto res = gamma_total(row.m, box, box.midpoint());
        double sum = 0.0;
        for (double v : res.gamma) sum += v;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
        for (std::size_t n = 0; n < row.expect.size(); ++n) {
            if (row.expect[n] < 0) continue;
            INFO(model_name(row.m) << " gamma" << n + 1);
            CHECK(std::fabs(res.gamma[n] - row.expect[n]) <= 0.05);
        }
    }
    // tiny entries stay tiny
    CHECK(gamma_total(ModelId::GAB, prior_box(ModelId::GAB),
                      prior_box(ModelId::GAB).midpoint())
              .gamma[2] < 1e-3);
    CHECK(gamma_total(ModelId::BET, prior_box(ModelId::BET),
                      prior_box(ModelId::BET).midpoint())
              .gamma[1] < 1e-3);
}

TEST_CASE("gamma_total scale property: measure scaling cancels") {
    const ParamBox box = prior_box(ModelId::SM);
    const ParamVector mid = box.midpoint();
    SensitivityOptions a, b;
    b.window_hi = 0.5;  // different window changes nu but keeps normalisation
    const auto ga = gamma_total(ModelId::SM, box, mid, a);
    const auto gb = gamma_total(ModelId::SM, box, mid, b);
    double sa = 0, sb = 0;
    for (double v : ga.gamma) sa += v;
    for (double v : gb.gamma) sb += v;
    CHECK(sa == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sb == doctest::Approx(1.0).epsilon(1e-12));
    // raw integrals respond to the measure, ratios stay normalised
    CHECK(ga.nu[0] > gb.nu[0]);
}

TEST_CASE("fisher matrix of the affine SM model has closed-form entries") {
    // theta = (1, -ln(1-a)): F_11 = width of the window
    const ParamVector p{0.008, 0.1};
    const FisherResult fr = fisher_matrix(ModelId::SM, p, 0.05, 0.916);
    CHECK(fr.converged);
    CHECK(fr.F(0, 0) == doctest::Approx(0.916 - 0.05).epsilon(1e-9));
    // int -ln(1-a) da on [0.05, 0.916]
    auto anti = [](double a) {
        const double u = 1.0 - a;
        return u - u * std::log(u);
    };
    CHECK(fr.F(0, 1) == doctest::Approx(anti(0.916) - anti(0.05)).epsilon(1e-9));
    CHECK(fr.F(0, 1) == doctest::Approx(fr.F(1, 0)).epsilon(1e-15));
    const auto ev = symmetric_eigenvalues(fr.F);
    CHECK(ev.front() >= -1e-10 * norm1(fr.F));
}

TEST_CASE("fisher matrix matches a dense trapezoid oracle at the MADS estimate") {
    const ParamVector p{-0.76, 2.47};
    const FisherResult fr = fisher_matrix(ModelId::MADS, p, 0.05, 0.916);
    REQUIRE(fr.converged);
    // brute-force oracle: 10^4-node trapezoid on the same window
    const int N = 10000;
    Matrix oracle(2);
    for (int i = 0; i <= N; ++i) {
        const double a = 0.05 + (0.916 - 0.05) * i / N;
        const double w = (i == 0 || i == N) ? 0.5 : 1.0;
        const auto th = eval_grad(ModelId::MADS, p, a);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) oracle(r, c) += w * th[r] * th[c];
    }
    const double h = (0.916 - 0.05) / N;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            CHECK(fr.F(r, c) == doctest::Approx(oracle(r, c) * h).epsilon(1e-6));
}

TEST_CASE("node doubling is stable at the prior midpoints") {
    for (ModelId m : kAllModels) {
        const ParamBox box = prior_box(m);
        const ParamVector mid = box.midpoint();
        const auto res = gamma_total(m, box, mid);
        INFO(model_name(m));
        CHECK(res.converged);
        const FisherResult fr =
            fisher_matrix(m, mid, 0.05, m == ModelId::MADS ? 0.9 : 0.916);
        CHECK(fr.converged);
    }
}

TEST_CASE("error estimator") {
    // scalar case: F = 4, p = 2 -> eta = sqrt(1/4)/2 = 0.25
    FisherResult fr;
    fr.F = Matrix(1);
    fr.F(0, 0) = 4.0;
    fr.condition = 1.0;
    const auto eta = error_estimator(fr, {2.0});
    CHECK(eta[0] == doctest::Approx(0.25).epsilon(1e-12));

    // singular information flags every entry as unidentifiable
    FisherResult sing;
    sing.F = Matrix(2);
    sing.F(0, 0) = 1.0;
    sing.F(0, 1) = 1.0;
    sing.F(1, 0) = 1.0;
    sing.F(1, 1) = 1.0;
    sing.condition = condition1(sing.F);
    const auto eta2 = error_estimator(sing, {1.0, 1.0});
    CHECK(std::isinf(eta2[0]));
    CHECK(std::isinf(eta2[1]));
}

TEST_CASE("sensitivity report carries normalised curves") {
    const ParamBox box = prior_box(ModelId::TRM);
    const auto rep = sensitivity_report(ModelId::TRM, box, box.midpoint(), 33);
    REQUIRE(rep.grid.size() == 33);
    REQUIRE(rep.gamma.size() == 3);
    for (std::size_t i = 0; i < rep.grid.size(); ++i) {
        double sum = 0.0;
        for (std::size_t n = 0; n < 3; ++n) sum += rep.gamma[n][i];
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
    }
}
