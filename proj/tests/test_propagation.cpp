#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "rapidpd/propagation.hpp"
#include "rapidpd/scenario.hpp"

using namespace rapidpd;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("single free-space hop at f = c", "[propagation]") {
    Path p;
    p.segments.push_back({1.0, 1.0});
    const auto h = path_response(p, kSpeedOfLight, std::vector<double>{1.0});
    // Magnitude 1/(4 pi); phase 2 pi, i.e. back to the real axis.
    CHECK_THAT(std::abs(h), WithinRel(1.0 / (4.0 * kPi), 1e-12));
    CHECK(h.real() > 0.0);
    CHECK_THAT(h.imag() / std::abs(h), WithinAbs(0.0, 1e-9));
}

TEST_CASE("doubling a single segment length quarters the magnitude", "[propagation]") {
    Path p;
    p.segments.push_back({1.0, 1.0});
    const auto h1 = path_response(p, 5.775e9, std::vector<double>{1.0});
    const auto h2 = path_response(p, 5.775e9, std::vector<double>{2.0});
    CHECK_THAT(std::abs(h1) / std::abs(h2), WithinRel(4.0, 1e-12));
}

TEST_CASE("two-hop path at f = c/4 lands on the positive real axis", "[propagation]") {
    // Total phase (2 pi / 4) * 2 plus one bounce's pi: a full turn.
    Path p;
    p.segments.push_back({1.0, 1.0});
    p.segments.push_back({1.0, 1.0});
    const auto h = path_response(p, kSpeedOfLight / 4.0, std::vector<double>{1.0, 1.0});
    const double expect_mag = 1.0 / (4.0 * kPi) * (1.0 / (4.0 * kPi));
    CHECK_THAT(std::abs(h), WithinRel(expect_mag, 1e-12));
    CHECK(h.real() > 0.0);
    CHECK_THAT(h.imag() / std::abs(h), WithinAbs(0.0, 1e-9));
}

TEST_CASE("antenna gains scale the response linearly", "[propagation]") {
    Path p;
    p.segments.push_back({1.3, 0.2});
    const auto base = path_response(p, 5.775e9, std::vector<double>{1.3});
    const auto gained = path_response(p, 5.775e9, std::vector<double>{1.3}, 2.0, 3.0);
    CHECK_THAT(std::abs(gained), WithinRel(6.0 * std::abs(base), 1e-12));
}

TEST_CASE("path response validates its inputs", "[propagation]") {
    Path p;
    p.segments.push_back({1.0, 1.0});
    CHECK_THROWS_AS(path_response(p, 5.775e9, std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(path_response(p, 5.775e9, std::vector<double>{-1.0}), std::domain_error);
    CHECK_THROWS_AS(path_response(p, 5.775e9, std::vector<double>{0.0}), std::domain_error);
    Path empty;
    CHECK_THROWS_AS(path_response(empty, 5.775e9, std::vector<double>{}),
                    std::invalid_argument);
    Path bad_rcs;
    bad_rcs.segments.push_back({1.0, 0.0});
    CHECK_THROWS_AS(path_response(bad_rcs, 5.775e9, std::vector<double>{1.0}),
                    std::domain_error);
}

TEST_CASE("static CFR of a single path equals its response", "[propagation]") {
    Path p;
    p.segments.push_back({1.1, 0.3});
    p.segments.push_back({0.9, preset::kRxAperture});
    const auto grid = SubcarrierGrid(5.775e9, 312500.0, 16);
    const auto h = static_cfr({p}, grid);
    REQUIRE(h.size() == 16);
    for (int i = 0; i < 16; ++i) {
        const auto expect = path_response(p, grid.frequency(i), base_lengths(p));
        CHECK_THAT(std::abs(h[static_cast<std::size_t>(i)] - expect), WithinAbs(0.0, 1e-18));
    }
}

TEST_CASE("two identical paths double the CFR", "[propagation]") {
    Path p;
    p.segments.push_back({1.1, 0.3});
    const auto grid = SubcarrierGrid(5.775e9, 312500.0, 8);
    const auto one = static_cfr({p}, grid);
    const auto two = static_cfr({p, p}, grid);
    for (std::size_t i = 0; i < one.size(); ++i)
        CHECK_THAT(std::abs(two[i] - 2.0 * one[i]), WithinAbs(0.0, 1e-20));
}

TEST_CASE("length difference of half a wavelength interferes destructively", "[propagation]") {
    // Grid with an odd count puts the middle subcarrier exactly at center.
    const double f = 5.775e9;
    const auto grid = SubcarrierGrid(f, 312500.0, 3);
    const double delta = kSpeedOfLight / (2.0 * f);
    Path a;
    a.segments.push_back({1.0, 1.0});
    Path b;
    b.segments.push_back({1.0 + delta, 1.0});
    const auto h = static_cfr({a, b}, grid);
    const double mag_a = std::abs(static_cfr({a}, grid)[1]);
    const double mag_b = std::abs(static_cfr({b}, grid)[1]);
    CHECK_THAT(std::abs(h[1]), WithinAbs(std::abs(mag_a - mag_b), 1e-9 * mag_a));
}

TEST_CASE("empty path set is a domain error", "[propagation]") {
    const auto grid = SubcarrierGrid(5.775e9, 312500.0, 8);
    CHECK_THROWS_AS(static_cfr({}, grid), std::domain_error);
    CHECK_THROWS_AS(dynamic_cfr({}, 0.0, grid), std::domain_error);
}

TEST_CASE("motion waveforms start at zero and respect the amplitude bound", "[motion]") {
    const MotionProfile sine(0.008, 0.3);
    CHECK_THAT(sine.displacement(0.0), WithinAbs(0.0, 1e-18));
    const MotionProfile tri(0.008, 0.3, Waveform::triangle);
    CHECK_THAT(tri.displacement(0.0), WithinAbs(0.0, 1e-18));
    // Triangle peaks one quarter period in, like the sine.
    CHECK_THAT(tri.displacement(0.25 / 0.3), WithinRel(0.008, 1e-12));
    CHECK_THAT(tri.displacement(0.75 / 0.3), WithinRel(-0.008, 1e-12));
    const MotionProfile blr(0.004, 0.5, Waveform::band_limited_random, 0.0, 77);
    for (int n = 0; n < 500; ++n) {
        const double d = blr.displacement(0.05 * n);
        CHECK(std::abs(d) <= 0.004 + 1e-15);
    }
    // Same seed, same trajectory; different seed, different trajectory.
    const MotionProfile blr2(0.004, 0.5, Waveform::band_limited_random, 0.0, 77);
    CHECK(blr.displacement(1.23) == blr2.displacement(1.23));
    const MotionProfile blr3(0.004, 0.5, Waveform::band_limited_random, 0.0, 78);
    CHECK(blr.displacement(1.23) != blr3.displacement(1.23));
}

TEST_CASE("motion profile validates the micro-movement bound", "[motion]") {
    CHECK_THROWS_AS(MotionProfile(0.06, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(MotionProfile(-0.001, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(MotionProfile(0.008, 0.0), std::invalid_argument);
    CHECK_NOTHROW(MotionProfile(0.05, 0.3));
    CHECK_NOTHROW(MotionProfile(0.0, 0.3));
}

TEST_CASE("still scene: dynamic CFR equals static CFR at every time", "[propagation]") {
    Path a;
    a.segments.push_back({1.2, 0.25});
    a.segments.push_back({0.8, preset::kRxAperture});
    Path b;
    b.segments.push_back({1.0, preset::kRxAperture});
    const auto grid = SubcarrierGrid(5.775e9, 312500.0, 16);
    const auto still = static_cfr({a, b}, grid);
    for (double t : {0.0, 0.37, 5.5}) {
        const auto h = dynamic_cfr({a, b}, t, grid);
        for (std::size_t i = 0; i < h.size(); ++i)
            CHECK_THAT(std::abs(h[i] - still[i]), WithinAbs(0.0, 1e-20));
    }
}

TEST_CASE("sine motion at t=0 with zero offset matches the static CFR", "[propagation]") {
    Path p;
    p.segments.push_back({1.2, 0.25});
    p.segments.push_back({0.8, preset::kRxAperture});
    p.motion.emplace(0.008, 0.3);
    const auto grid = SubcarrierGrid(5.775e9, 312500.0, 8);
    const auto still = static_cfr({p}, grid);
    const auto h = dynamic_cfr({p}, 0.0, grid);
    for (std::size_t i = 0; i < h.size(); ++i)
        CHECK_THAT(std::abs(h[i] - still[i]), WithinAbs(0.0, 1e-18));
}

TEST_CASE("CFR phase follows the displacement law", "[propagation]") {
    // One moving path: the direct route's phase must advance by
    // (2 pi f / c) * A sin(2 pi f_b t) over the static phase, and the
    // factorized route must agree with that law to 1e-12.
    Path p;
    p.segments.push_back({1.5, 0.3});
    p.segments.push_back({1.1, preset::kRxAperture});
    const double amp = 0.0008;
    const double rate = 0.4;
    p.motion.emplace(amp, rate);
    const auto grid = SubcarrierGrid(5.775e9, 312500.0, 4);
    const auto still = static_cfr({p}, grid);
    for (double t : {0.1, 0.63, 1.9}) {
        const double d = amp * std::sin(2.0 * kPi * rate * t);
        for (auto route : {CfrRoute::direct, CfrRoute::factorized}) {
            DynamicCfrOptions opt;
            opt.route = route;
            const auto h = dynamic_cfr({p}, t, grid, 1.0, 1.0, opt);
            for (int i = 0; i < grid.count(); ++i) {
                const double expect =
                    2.0 * kPi * grid.frequency(i) / kSpeedOfLight * d;
                double got = std::arg(h[static_cast<std::size_t>(i)] /
                                      still[static_cast<std::size_t>(i)]);
                CHECK_THAT(got, WithinAbs(expect, 1e-12));
            }
        }
    }
}

TEST_CASE("direct route with frozen amplitude matches the factorized route", "[propagation]") {
    Path moving;
    moving.segments.push_back({1.4, 0.5});
    moving.segments.push_back({1.0, preset::kRxAperture});
    moving.motion.emplace(0.0009, 0.35, Waveform::sine, 0.7);
    Path still;
    still.segments.push_back({1.1, preset::kRxAperture});
    const auto grid = SubcarrierGrid(5.775e9, 312500.0, 32);
    DynamicCfrOptions direct_frozen;
    direct_frozen.route = CfrRoute::direct;
    direct_frozen.freeze_amplitude = true;
    DynamicCfrOptions factorized;
    factorized.route = CfrRoute::factorized;
    for (double t : {0.0, 0.21, 1.07, 3.3}) {
        const auto a = dynamic_cfr({moving, still}, t, grid, 1.0, 1.0, direct_frozen);
        const auto b = dynamic_cfr({moving, still}, t, grid, 1.0, 1.0, factorized);
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK_THAT(std::abs(a[i] - b[i]) / std::abs(b[i]), WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("amplitude drift over a 6 mm stroke on long paths stays under 1%", "[propagation]") {
    // 3 mm each way around the base length, motion on the first hop.
    for (const auto& lengths : {std::vector<double>{2.0}, std::vector<double>{1.3, 0.9}}) {
        Path p;
        for (double len : lengths) p.segments.push_back({len, 0.4});
        p.segments.back().rcs_m2 = preset::kRxAperture;
        const double base_mag =
            std::abs(path_response(p, 5.775e9, lengths));
        double worst = 0.0;
        for (int n = -100; n <= 100; ++n) {
            auto moved = lengths;
            moved[0] += 0.003 * static_cast<double>(n) / 100.0;
            const double mag = std::abs(path_response(p, 5.775e9, moved));
            worst = std::max(worst, std::abs(mag - base_mag) / base_mag);
        }
        CHECK(worst <= 0.01);
    }
}

TEST_CASE("motion amplitude must stay below the moving segment", "[propagation]") {
    Path p;
    p.segments.push_back({0.03, 0.3});
    p.motion.emplace(0.04, 0.5);
    const auto grid = SubcarrierGrid(5.775e9, 312500.0, 4);
    CHECK_THROWS_AS(dynamic_cfr({p}, 0.0, grid), std::domain_error);
}
