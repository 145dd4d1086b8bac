#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sorption/dataset.hpp"

using namespace sorption;

TEST_CASE("bundled table has 21 rows with the published anchor values") {
    const auto& ds = bundled_table1();
    REQUIRE(ds.size() == 21);
    CHECK(ds.rows.front().activity == 0.0);
    CHECK(ds.rows.front().moisture == 0.0);
    bool found_half = false, found_last = false;
    for (const auto& r : ds.rows) {
        if (r.activity == 0.5) {
            found_half = true;
            CHECK(r.moisture == doctest::Approx(0.072));
            CHECK(r.delta_total == doctest::Approx(0.0029));
        }
        if (r.activity == 0.916) {
            found_last = true;
            CHECK(r.moisture == doctest::Approx(0.8113));
            CHECK(r.delta_total == doctest::Approx(0.0428));
        }
    }
    CHECK(found_half);
    CHECK(found_last);
    for (std::size_t i = 1; i < ds.size(); ++i)
        CHECK(ds.rows[i].moisture > ds.rows[i - 1].moisture);
    // printed total at a=0.85 is below the random component; shipped as a warning
    REQUIRE(ds.warnings.size() == 1);
    CHECK(ds.warnings[0].find("0.85") != std::string::npos);
}

TEST_CASE("analysis rows drop the a=0 row only") {
    const auto an = bundled_table1().analysis_rows();
    CHECK(an.size() == 20);
    CHECK(an.rows.front().activity == 0.05);
    CHECK(an.rows.back().activity == 0.916);
}

TEST_CASE("csv round trip is bit exact") {
    const auto& ds = bundled_table1();
    std::ostringstream out;
    save_dataset(ds, out);
    std::istringstream in(out.str());
    const auto back = load_dataset(in, "mem");
    REQUIRE(back.size() == ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        CHECK(back.rows[i].activity == ds.rows[i].activity);
        CHECK(back.rows[i].moisture == ds.rows[i].moisture);
        CHECK(back.rows[i].delta_total == ds.rows[i].delta_total);
        CHECK(back.rows[i].delta_random == ds.rows[i].delta_random);
        CHECK(back.rows[i].delta_sys == ds.rows[i].delta_sys);
    }
    std::ostringstream out2;
    save_dataset(back, out2);
    CHECK(out.str() == out2.str());
}

TEST_CASE("loader rejects malformed input with located messages") {
    std::istringstream empty("");
    CHECK_THROWS_AS(load_dataset(empty, "t"), DataError);

    std::istringstream badheader("a,b\n1,2\n");
    CHECK_THROWS_AS(load_dataset(badheader, "t"), DataError);

    std::istringstream nonmono(
        "activity,moisture,uncertainty_total,uncertainty_random,uncertainty_systematic\n"
        "0.5,0.07,0,0,0\n0.4,0.06,0,0,0\n");
    CHECK_THROWS_WITH_AS(load_dataset(nonmono, "t"),
                         doctest::Contains("not strictly increasing"), DataError);

    std::istringstream badnum(
        "activity,moisture,uncertainty_total,uncertainty_random,uncertainty_systematic\n"
        "0.5,seven,0,0,0\n");
    CHECK_THROWS_WITH_AS(load_dataset(badnum, "t"), doctest::Contains(":2:"), DataError);

    std::istringstream negative(
        "activity,moisture,uncertainty_total,uncertainty_random,uncertainty_systematic\n"
        "0.5,-0.07,0,0,0\n");
    CHECK_THROWS_AS(load_dataset(negative, "t"), DataError);
}

TEST_CASE("loader tolerates omitted uncertainty columns with a warning") {
    std::istringstream in("activity,moisture\n0.1,0.02\n0.2,0.03\n");
    const auto ds = load_dataset(in, "t");
    REQUIRE(ds.size() == 2);
    CHECK(ds.rows[0].delta_total == 0.0);
    REQUIRE_FALSE(ds.warnings.empty());
    CHECK(ds.warnings[0].find("missing uncertainty columns") != std::string::npos);
}

TEST_CASE("replicate aggregation reproduces the hand-computed case") {
    ReplicateSet reps;
    reps.activities = {0.5};
    reps.readings = {{0.01}, {0.02}, {0.03}, {0.04}, {0.05}};
    const auto ds = aggregate_replicates(reps);
    REQUIRE(ds.size() == 1);
    CHECK(ds.rows[0].moisture == doctest::Approx(0.03).epsilon(1e-15));
    // (1/sqrt(5)) * sqrt((1/5) * 0.001) = 0.0063245...
    CHECK(ds.rows[0].delta_random == doctest::Approx(0.006324555).epsilon(1e-6));
    const double expect_total = std::sqrt(ds.rows[0].delta_random * ds.rows[0].delta_random +
                                          1e-14);
    CHECK(ds.rows[0].delta_total == doctest::Approx(expect_total).epsilon(1e-12));
    // exact decomposition on aggregated rows
    const double lhs = ds.rows[0].delta_total * ds.rows[0].delta_total -
                       ds.rows[0].delta_random * ds.rows[0].delta_random;
    CHECK(lhs == doctest::Approx(1e-14).epsilon(1e-9));
}

TEST_CASE("aggregation edge cases") {
    ReplicateSet one;
    one.activities = {0.2, 0.4};
    one.readings = {{0.05, 0.08}};
    const auto ds = aggregate_replicates(one);
    CHECK(ds.rows[0].delta_random == 0.0);
    REQUIRE_FALSE(ds.warnings.empty());
    CHECK(ds.warnings[0].find("single replicate") != std::string::npos);

    ReplicateSet none;
    none.activities = {0.2};
    CHECK_THROWS_AS(aggregate_replicates(none), DataError);

    ReplicateSet misaligned;
    misaligned.activities = {0.2, 0.4};
    misaligned.readings = {{0.05}};
    CHECK_THROWS_AS(aggregate_replicates(misaligned), DataError);

    // identical replicates: spread collapses to the systematic floor
    ReplicateSet same;
    same.activities = {0.3};
    same.readings = {{0.04}, {0.04}, {0.04}};
    const auto ds2 = aggregate_replicates(same);
    CHECK(ds2.rows[0].delta_random == 0.0);
    CHECK(ds2.rows[0].delta_total == doctest::Approx(1e-7).epsilon(1e-12));
}

TEST_CASE("aggregation is invariant to replicate order") {
    ReplicateSet a, b;
    a.activities = b.activities = {0.1, 0.5, 0.8};
    a.readings = {{0.01, 0.06, 0.15}, {0.02, 0.08, 0.18}, {0.015, 0.07, 0.16}};
    b.readings = {a.readings[2], a.readings[0], a.readings[1]};
    const auto da = aggregate_replicates(a);
    const auto db = aggregate_replicates(b);
    for (std::size_t i = 0; i < da.size(); ++i) {
        CHECK(da.rows[i].moisture == doctest::Approx(db.rows[i].moisture).epsilon(1e-15));
        CHECK(da.rows[i].delta_random ==
              doctest::Approx(db.rows[i].delta_random).epsilon(1e-12));
    }
}

TEST_CASE("uncertainty helpers") {
    const auto an = bundled_table1().analysis_rows();
    CHECK(an.sum_delta_sq() == doctest::Approx(3.15258e-3).epsilon(1e-4));
    CHECK(an.rms_delta() == doctest::Approx(std::sqrt(3.15258e-3 / 20.0)).epsilon(1e-4));
}
