#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rapidpd/errors.hpp"
#include "rapidpd/frame.hpp"
#include "rapidpd/propagation.hpp"
#include "rapidpd/rng.hpp"
#include "rapidpd/scenario.hpp"
#include "rapidpd/subcarrier_grid.hpp"

namespace rapidpd {

struct SynthesisOptions {
    int stream_id = 0;
    DynamicCfrOptions cfr;  // route selection, mostly for cross-checks
};

struct SynthesisResult {
    std::vector<CsiFrame> frames;
    std::vector<int> frame_labels;  // 1 when the scene holds a moving occupant
    std::string scenario;
    std::map<std::string, std::string> metadata;
};

// Produces the measured frame sequence for a scene: per frame, the scene's
// frequency response at that instant, scaled by the receiver gain of the
// moment, plus fresh complex noise per subcarrier,
//
//   value(t, f_i) = G(t) * H(t, f_i) + noise,
//
// with both noise quadratures N(0, sigma^2). Noise enters after the gain,
// matching a receiver whose noise floor does not track its gain setting.
//
// Gain switching and noise draw from separate child streams of `seed`, so
// turning one off never changes the other's draws. Same seed, same scene,
// same result.
inline SynthesisResult synthesize(const SceneSpec& scene, const RadioModel& radio,
                                  double duration_s, double rate_hz,
                                  const SubcarrierGrid& grid, std::uint64_t seed,
                                  const SynthesisOptions& options = {}) {
    if (!(rate_hz > 0.0))
        throw std::invalid_argument("synthesize: rate_hz must be positive");
    const auto frame_count = static_cast<std::int64_t>(std::llround(duration_s * rate_hz));
    if (frame_count < 1)
        throw std::invalid_argument("synthesize: duration covers no frames");
    if (scene.paths.empty())
        throw std::domain_error("synthesize: scene has no paths");
    if (!(radio.noise_sigma >= 0.0))
        throw std::invalid_argument("synthesize: noise_sigma must be nonnegative");

    const std::size_t k = static_cast<std::size_t>(grid.count());
    const int label = scene.motile() ? 1 : 0;

    // Gain schedule: uniform level held for 1 + Geometric frames, mean dwell
    // mean_dwell_s.
    std::vector<double> gain(static_cast<std::size_t>(frame_count), 1.0);
    if (radio.agc.enabled) {
        if (radio.agc.levels.empty())
            throw std::invalid_argument("synthesize: AGC enabled with no levels");
        if (!(radio.agc.mean_dwell_s > 0.0))
            throw std::invalid_argument("synthesize: AGC mean_dwell_s must be positive");
        auto agc_rng = child_rng(seed, kAgcStream);
        std::uniform_int_distribution<std::size_t> pick(0, radio.agc.levels.size() - 1);
        const double mean_frames = radio.agc.mean_dwell_s * rate_hz;
        std::geometric_distribution<std::int64_t> extra(1.0 / std::max(1.0, mean_frames));
        std::int64_t t = 0;
        while (t < frame_count) {
            const double level = radio.agc.levels[pick(agc_rng)];
            std::int64_t hold = 1 + extra(agc_rng);
            for (; hold > 0 && t < frame_count; --hold, ++t)
                gain[static_cast<std::size_t>(t)] = level;
        }
    }

    SynthesisResult out;
    out.scenario = scene.name;
    out.metadata = scene.metadata;
    out.metadata["rate_hz"] = std::to_string(rate_hz);
    out.metadata["noise_sigma"] = std::to_string(radio.noise_sigma);
    out.frames.reserve(static_cast<std::size_t>(frame_count));
    out.frame_labels.assign(static_cast<std::size_t>(frame_count), label);

    for (std::int64_t n = 0; n < frame_count; ++n) {
        const double t_s = static_cast<double>(n) / rate_hz;
        CsiFrame frame;
        frame.timestamp_us = static_cast<std::int64_t>(std::llround(t_s * 1e6));
        frame.stream_id = options.stream_id;
        frame.agc_gain = gain[static_cast<std::size_t>(n)];
        frame.values =
            dynamic_cfr(scene.paths, t_s, grid, radio.tx_gain, radio.rx_gain, options.cfr);
        auto noise_rng = child_rng(seed, kNoiseStream, static_cast<std::uint64_t>(n));
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (std::size_t i = 0; i < k; ++i) {
            const double g = gain[static_cast<std::size_t>(n)];
            const double re = gauss(noise_rng);
            const double im = gauss(noise_rng);
            frame.values[i] = g * frame.values[i] +
                              std::complex<double>(radio.noise_sigma * re,
                                                   radio.noise_sigma * im);
        }
        if (!frame.finite())
            throw internal_error("synthesize: non-finite frame at t_us=" +
                                 std::to_string(frame.timestamp_us));
        out.frames.push_back(std::move(frame));
    }
    return out;
}

}  // namespace rapidpd
