#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ghcp/experiment.hpp"
#include "ghcp/point_process.hpp"

using namespace ghcp;

TEST_CASE("range_scale basics") {
    CHECK(range_scale(1.0, 1.0, 1.0, 1.0, 1.0, 1.0) == 1.0);
    CHECK(range_scale(4.0, 1.0, 1.0, 1.0, 5.0, 5.0) == doctest::Approx(2.0));
    CHECK(range_scale(1.0, 1.0, 16.0, 1.0, 35e9, 6e9) ==
          doctest::Approx(4.0 * 6.0 / 35.0));
    CHECK_THROWS_AS(range_scale(0.0, 1.0, 1.0, 1.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("empty config gives the default parameter set") {
    LoadedConfig lc = parse_config("");
    CHECK(lc.network.los_radius == 300.0);
    CHECK(lc.network.d == 20.0);
    CHECK(lc.network.alpha == 2.1);
    CHECK(lc.network.p0 == 0.02);
    CHECK(lc.network.data_antenna.n_t == 16);
    CHECK(lc.network.data_antenna.n_r == 8);
    CHECK(lc.network.sir_threshold == doctest::Approx(std::pow(10.0, -0.5)));
    CHECK(lc.network.mechanism == Mechanism::directional);
    // directional ranges derived from the 4.8d / 4d reference by the Friis rule
    double scale_t = std::sqrt(16.0) * 6.0 / 35.0;
    double scale_r = std::sqrt(8.0) * 6.0 / 35.0;
    CHECK(lc.network.exclusion.r_t == doctest::Approx(96.0 * scale_t));
    CHECK(lc.network.exclusion.r_r == doctest::Approx(80.0 * scale_r));
}

TEST_CASE("cross-link anchor ranges and power scaling") {
    LoadedConfig ref = parse_config(R"({"mechanism": "cross_link"})");
    CHECK(ref.network.exclusion.r_t == doctest::Approx(96.0));
    CHECK(ref.network.exclusion.r_r == doctest::Approx(80.0));
    CHECK(ref.network.exclusion.antenna.omni());

    LoadedConfig twice = parse_config(R"({"mechanism": "cross_link", "sub7_power_w": 0.04})");
    CHECK(twice.network.exclusion.r_t == doctest::Approx(96.0 * std::sqrt(2.0)));
    CHECK(twice.network.exclusion.r_r == doctest::Approx(80.0 * std::sqrt(2.0)));
}

TEST_CASE("config validation errors name the offending field") {
    CHECK_THROWS_WITH_AS(parse_config(R"({"alpha": 1.5})"),
                         "alpha must exceed 2", std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config(R"({"frobnicate": 3})"),
                         "config: unknown key 'frobnicate'", std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config(R"({"thinning": "type3"})"),
                         "config: thinning must be 'type1' or 'type2'",
                         std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({"lambda_p": -1.0})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config(R"({"m_nakagami": 0})"), std::invalid_argument);
}

TEST_CASE("explicit range overrides are honored") {
    LoadedConfig lc = parse_config(R"({"r_t": 120.0, "r_r": 70.0})");
    CHECK(lc.network.exclusion.r_t == 120.0);
    CHECK(lc.network.exclusion.r_r == 70.0);
}

TEST_CASE("plan parsing: grids and defaults") {
    ExperimentPlan p = parse_plan(R"({"experiment": "intensity",
        "grid": [1e-4, 4e-4], "replications": 10, "seed": 3})");
    CHECK(p.kind == ExperimentKind::intensity);
    CHECK(p.grid.size() == 2);
    CHECK(p.replications == 10);

    ExperimentPlan lr = parse_plan(R"({"experiment": "throughput",
        "log10_range": [-5, -2, 7]})");
    CHECK(lr.grid.size() == 7);
    CHECK(lr.grid.front() == doctest::Approx(1e-5));
    CHECK(lr.grid.back() == doctest::Approx(1e-2));

    CHECK_THROWS_AS(parse_plan(R"({"experiment": "nope"})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_plan(R"({"experiment": "intensity", "grid": []})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_plan(R"({"bogus": 1})"), std::invalid_argument);
}

TEST_CASE("config hash is stable and sensitive") {
    LoadedConfig a = parse_config("");
    LoadedConfig b = parse_config(R"({"lambda_p": 5e-4})");
    CHECK(config_hash(a.network) == config_hash(parse_config("").network));
    CHECK(config_hash(a.network) != config_hash(b.network));
    CHECK(describe(a.network).find("lambda_p=") != std::string::npos);
}

TEST_CASE("intensity experiment: analytic and Monte Carlo columns agree") {
    ExperimentPlan plan = parse_plan(R"({
        "experiment": "intensity",
        "config": {"mechanism": "cross_link", "thinning": "type2"},
        "grid": [3e-5, 1e-4],
        "replications": 150,
        "window_m": 900,
        "seed": 11})");
    SweepTable table = run_experiment(plan, 2);
    REQUIRE(table.rows.size() == 2);
    auto col = [&](const char* name) {
        for (std::size_t i = 0; i < table.header.size(); ++i)
            if (table.header[i] == name) return i;
        REQUIRE(false);
        return std::size_t(0);
    };
    for (const auto& row : table.rows) {
        double analytic = std::stod(row[col("lambda_b")]);
        double mc = std::stod(row[col("lambda_b_mc")]);
        double se = std::stod(row[col("lambda_b_mc_se")]);
        CHECK(std::abs(mc - analytic) < 3.5 * se);
        CHECK(row[col("status")] == "ok");
    }

    // deterministic rerun reproduces the table byte for byte
    std::string csv1 = to_csv(run_experiment(plan, 2));
    std::string csv2 = to_csv(run_experiment(plan, 1));  // thread count irrelevant
    CHECK(csv1 == csv2);
}

TEST_CASE("throughput experiment emits the product column") {
    ExperimentPlan plan = parse_plan(R"({
        "experiment": "throughput",
        "config": {"mechanism": "directional", "thinning": "type2"},
        "grid": [4e-4],
        "with_montecarlo": false})");
    SweepTable table = run_experiment(plan, 1);
    REQUIRE(table.rows.size() == 1);
    auto col = [&](const char* name) {
        for (std::size_t i = 0; i < table.header.size(); ++i)
            if (table.header[i] == name) return i;
        REQUIRE(false);
        return std::size_t(0);
    };
    const auto& row = table.rows[0];
    double succ = std::stod(row[col("success_prob")]);
    double lb = std::stod(row[col("lambda_b")]);
    double thr = std::stod(row[col("throughput")]);
    CHECK(thr == doctest::Approx(succ * lb).epsilon(1e-9));
    CHECK(succ > 0.0);
    CHECK(succ <= 1.0);
}
