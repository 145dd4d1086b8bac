#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sorption/abc.hpp"
#include "sorption/estimation.hpp"

using namespace sorption;

TEST_CASE("tolerance ladder ends at the discrepancy level") {
    const auto an = bundled_table1().analysis_rows();
    const auto eps = tolerance_ladder(an, 22);
    REQUIRE(eps.size() == 22);
    CHECK(eps.back() == doctest::Approx(0.080).epsilon(0.03));
    CHECK(eps.front() == doctest::Approx(20.0 * eps.back()).epsilon(1e-12));
    for (std::size_t i = 1; i < eps.size(); ++i) CHECK(eps[i] < eps[i - 1]);

    const auto single = tolerance_ladder(an, 1);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == doctest::Approx(eps.back()).epsilon(1e-12));

    SorptionDataset nodelta;
    nodelta.rows.push_back(SorptionRow{0.5, 0.07, 0.0, 0.0, 0.0});
    CHECK_THROWS_AS(tolerance_ladder(nodelta, 5), DataError);
}

TEST_CASE("prior sampling is uniform, in-box and reproducible") {
    const ParamBox box = prior_box(ModelId::MADS);
    Rng rng(99);
    double mean = 0.0;
    const int N = 100000;
    for (int i = 0; i < N; ++i) {
        const auto p = sample_prior(box, rng);
        REQUIRE(box.contains(p));
        mean += p[0];
    }
    mean /= N;
    CHECK(mean == doctest::Approx(-0.75).epsilon(0.013));

    Rng r1(5), r2(5);
    for (int i = 0; i < 100; ++i) {
        const auto a = sample_prior(box, r1);
        const auto b = sample_prior(box, r2);
        CHECK(a == b);
    }
}

TEST_CASE("perturbation kernel support and uniformity") {
    const ParamVector p{1.0, -2.0};
    const std::vector<double> kappa{0.1, 0.05};
    Rng rng(3);
    const int N = 100000;
    std::vector<double> offsets;
    offsets.reserve(N);
    for (int i = 0; i < N; ++i) {
        const auto q = perturb(p, kappa, rng);
        CHECK(std::fabs(q[0] - p[0]) <= kappa[0]);
        CHECK(std::fabs(q[1] - p[1]) <= kappa[1]);
        offsets.push_back(q[0] - p[0]);
    }
    // Kolmogorov-Smirnov against U(-kappa, kappa)
    std::sort(offsets.begin(), offsets.end());
    double dmax = 0.0;
    for (int i = 0; i < N; ++i) {
        const double cdf = (offsets[i] + kappa[0]) / (2 * kappa[0]);
        dmax = std::max(dmax, std::fabs(cdf - (i + 1.0) / N));
    }
    CHECK(dmax < 1.63 / std::sqrt(static_cast<double>(N)));  // alpha = 0.01

    // kappa -> 0 keeps the particle in place
    const auto same = perturb(p, {1e-300, 1e-300}, rng);
    CHECK(same[0] == doctest::Approx(p[0]).epsilon(1e-12));
}

TEST_CASE("weight update follows the sequential importance formula") {
    const ParamBox box{{0.0, 0.0}, {1.0, 1.0}};
    const std::vector<double> kappa{0.5, 0.5};
    // first population: unit weight
    CHECK(weight_update({0.5, 0.5}, {}, box, kappa, true) == 1.0);

    // single previous particle exactly at the proposal
    std::vector<Particle> prev{{ModelId::SM, {0.5, 0.5}, 1.0, 0.0}};
    const double k0 = kernel_density(prev[0].p, {0.5, 0.5}, kappa);
    CHECK(weight_update({0.5, 0.5}, prev, box, kappa, false) ==
          doctest::Approx(1.0 / k0).epsilon(1e-12));  // prior density is 1 on the unit box

    // a kernel covering the whole box with uniform weights gives a flat weight
    const std::vector<double> wide{2.0, 2.0};
    std::vector<Particle> prev2{{ModelId::SM, {0.2, 0.2}, 0.5, 0.0},
                                {ModelId::SM, {0.8, 0.8}, 0.5, 0.0}};
    const double w1 = weight_update({0.1, 0.9}, prev2, box, wide, false);
    const double w2 = weight_update({0.9, 0.1}, prev2, box, wide, false);
    CHECK(w1 == doctest::Approx(w2).epsilon(1e-12));

    // out-of-box proposal carries zero weight
    CHECK(weight_update({1.5, 0.5}, prev, box, kappa, false) == 0.0);
}

TEST_CASE("weight normalisation is per-model and idempotent") {
    Population pop;
    pop.particles = {{ModelId::SM, {0.1, 0.1}, 1.0, 0.0},
                     {ModelId::SM, {0.2, 0.2}, 3.0, 0.0},
                     {ModelId::MADS, {-0.7, 2.5}, 5.0, 0.0}};
    normalize_weights(pop);
    CHECK(pop.particles[0].weight == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(pop.particles[1].weight == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(pop.particles[2].weight == doctest::Approx(1.0).epsilon(1e-15));
    normalize_weights(pop);
    CHECK(pop.particles[0].weight == doctest::Approx(0.25).epsilon(1e-15));

    Population bad;
    bad.particles = {{ModelId::SM, {0.1, 0.1}, 0.0, 0.0}};
    CHECK_THROWS_AS(normalize_weights(bad), DataError);
}

TEST_CASE("single loose population accepts every proposal") {
    AbcConfig cfg;
    cfg.n_populations = 1;
    cfg.n_particles = 500;
    cfg.seed = 7;
    cfg.tolerances = {1e9};
    const auto res = run_abc(cfg, bundled_table1(), {ModelId::MADS});
    REQUIRE(res.populations.size() == 1);
    CHECK_FALSE(res.stalled);
    CHECK(res.populations[0].acceptance_rate == doctest::Approx(1.0));
    CHECK(res.populations[0].model_counts.at(ModelId::MADS) == 500);
}

TEST_CASE("loose single population spreads over all models") {
    AbcConfig cfg;
    cfg.n_populations = 1;
    cfg.n_particles = 4000;
    cfg.seed = 11;
    cfg.tolerances = {1e9};
    const auto res = run_abc(cfg, bundled_table1());
    const auto& counts = res.populations[0].model_counts;
    for (ModelId m : kAllModels) {
        INFO(model_name(m));
        CHECK(counts.at(m) > 0.125 * 4000 * 0.75);
        CHECK(counts.at(m) < 0.125 * 4000 * 1.25);
    }
}

TEST_CASE("seeded runs are bit identical") {
    AbcConfig cfg;
    cfg.n_populations = 4;
    cfg.n_particles = 200;
    cfg.seed = 31;
    const auto a = run_abc(cfg, bundled_table1());
    const auto b = run_abc(cfg, bundled_table1());
    REQUIRE(a.populations.size() == b.populations.size());
    for (std::size_t i = 0; i < a.populations.size(); ++i) {
        const auto& pa = a.populations[i];
        const auto& pb = b.populations[i];
        REQUIRE(pa.particles.size() == pb.particles.size());
        CHECK(pa.proposals == pb.proposals);
        for (std::size_t j = 0; j < pa.particles.size(); ++j) {
            CHECK(pa.particles[j].model == pb.particles[j].model);
            CHECK(pa.particles[j].p == pb.particles[j].p);
            CHECK(pa.particles[j].weight == pb.particles[j].weight);
        }
    }
}

TEST_CASE("accepted particles satisfy their population tolerance on re-evaluation") {
    AbcConfig cfg;
    cfg.n_populations = 6;
    cfg.n_particles = 150;
    cfg.seed = 13;
    const auto res = run_abc(cfg, bundled_table1());
    const auto an = bundled_table1().analysis_rows();
    for (const auto& pop : res.populations)
        for (const auto& q : pop.particles)
            CHECK(distance(q.model, q.p, an) <= pop.epsilon * (1 + 1e-12));
}

TEST_CASE("stall reporting keeps partial state") {
    AbcConfig cfg;
    cfg.n_populations = 2;
    cfg.n_particles = 50;
    cfg.seed = 17;
    cfg.max_attempts_per_particle = 200;
    cfg.tolerances = {0.5, 1e-9};  // second population unreachable
    const auto res = run_abc(cfg, bundled_table1(), {ModelId::SM});
    CHECK(res.stalled);
    CHECK(res.populations.size() == 2);
    CHECK_FALSE(res.stall_info.empty());
}

TEST_CASE("posterior summary aggregates weighted moments") {
    Population pop;
    pop.particles = {{ModelId::MADS, {-0.8, 2.5}, 0.5, 0.0},
                     {ModelId::MADS, {-0.7, 2.4}, 0.5, 0.0},
                     {ModelId::SM, {0.008, 0.1}, 1.0, 0.0}};
    const auto sum = posterior_summary(pop);
    REQUIRE(sum.size() == 2);
    CHECK(sum[0].count == 2);  // sorted by count
    CHECK(sum[0].mean[0] == doctest::Approx(-0.75).epsilon(1e-12));
    CHECK(sum[0].stddev[0] == doctest::Approx(0.05).epsilon(1e-9));
}
