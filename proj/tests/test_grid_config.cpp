#include <catch2/catch_amalgamated.hpp>

#include "rapidpd/config.hpp"
#include "rapidpd/subcarrier_grid.hpp"

using namespace rapidpd;

TEST_CASE("default grid matches the measured channel layout", "[grid]") {
    const auto grid = SubcarrierGrid::default_grid();
    CHECK(grid.count() == 234);
    CHECK(grid.center_hz() == 5.775e9);
    CHECK(grid.spacing_hz() == 312500.0);
    // Symmetric layout: half-integer index offsets around the center.
    CHECK_THAT(grid.frequency(0), Catch::Matchers::WithinRel(5.775e9 - 116.5 * 312500.0, 1e-15));
    CHECK_THAT(grid.frequency(233), Catch::Matchers::WithinRel(5.775e9 + 116.5 * 312500.0, 1e-15));
}

TEST_CASE("grid frequencies ascend with constant spacing", "[grid]") {
    const SubcarrierGrid grid(2.4e9, 78125.0, 57);
    const auto f = grid.frequencies();
    REQUIRE(f.size() == 57);
    for (std::size_t i = 1; i < f.size(); ++i) {
        CHECK(f[i] > f[i - 1]);
        CHECK_THAT(f[i] - f[i - 1], Catch::Matchers::WithinRel(78125.0, 1e-12));
    }
    double mean = 0.0;
    for (double v : f) mean += v;
    mean /= static_cast<double>(f.size());
    CHECK_THAT(mean, Catch::Matchers::WithinRel(2.4e9, 1e-12));
}

TEST_CASE("grid rejects degenerate parameters", "[grid]") {
    CHECK_THROWS_AS(SubcarrierGrid(5.775e9, 312500.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(SubcarrierGrid(5.775e9, 0.0, 234), std::invalid_argument);
    CHECK_THROWS_AS(SubcarrierGrid(5.775e9, -1.0, 234), std::invalid_argument);
    CHECK_THROWS_AS(SubcarrierGrid(0.0, 312500.0, 234), std::invalid_argument);
    // Spacing large against the center only warns; the grid still builds.
    CHECK_NOTHROW(SubcarrierGrid(1e6, 1e5, 8));
}

TEST_CASE("detector config defaults are the deployed operating point", "[config]") {
    const DetectorConfig cfg;
    CHECK(cfg.window_len == 20);
    CHECK(cfg.layers == 3);
    CHECK(cfg.smooth_windows == 3);
    CHECK(cfg.threshold == 0.43);
    CHECK(cfg.statistic_mode == StatisticMode::mean);
    CHECK(cfg.lag_index == 1);
    CHECK(cfg.safety_on);
    CHECK_FALSE(cfg.centered);
    CHECK(cfg.window_step == 0);
    CHECK(cfg.step() == 20);
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("detector config validation rejects bad values", "[config]") {
    DetectorConfig cfg;
    cfg.window_len = 1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.layers = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.smooth_windows = 2;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.smooth_windows = -1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.lag_index = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.window_step = -5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.window_step = 5;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.step() == 5);
}

TEST_CASE("statistic mode names round-trip", "[config]") {
    CHECK(statistic_mode_from("mean") == StatisticMode::mean);
    CHECK(statistic_mode_from("sum") == StatisticMode::sum);
    CHECK(std::string(to_string(StatisticMode::mean)) == "mean");
    CHECK(std::string(to_string(StatisticMode::sum)) == "sum");
    CHECK_THROWS_AS(statistic_mode_from("median"), std::invalid_argument);
}
