#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rapidpd/config.hpp"
#include "rapidpd/frame.hpp"

namespace rapidpd {

// Groups a frame stream into fixed-length windows, one window list per
// stream id.
//
// Frames are split by stream, keeping arrival order (each stream must be
// time-ordered; interleaving across streams is fine). Within a stream,
// consecutive frames belong to the same run while the inter-frame gap stays
// within `gap_tolerance` of the nominal period; a frame outside that band
// ends the run and starts a new one, which also catches out-of-order
// timestamps. Each run is cut into windows of `config.window_len` frames,
// advancing by `config.step()` frames; leftover frames that cannot fill a
// window are dropped.
//
// Throws std::invalid_argument if a stream mixes frames of different value
// counts (the message names the offending frame).
inline std::map<int, std::vector<CsiWindow>> assemble_windows(std::span<const CsiFrame> frames,
                                                              const DetectorConfig& config,
                                                              double nominal_rate_hz,
                                                              double gap_tolerance = 0.5) {
    config.validate();
    if (!(nominal_rate_hz > 0.0))
        throw std::invalid_argument("assemble_windows: nominal_rate_hz must be positive");
    if (!(gap_tolerance >= 0.0))
        throw std::invalid_argument("assemble_windows: gap_tolerance must be nonnegative");

    const double period_us = 1e6 / nominal_rate_hz;
    const double lo = (1.0 - gap_tolerance) * period_us;
    const double hi = (1.0 + gap_tolerance) * period_us;
    const std::size_t len = static_cast<std::size_t>(config.window_len);
    const std::size_t step = static_cast<std::size_t>(config.step());

    std::map<int, std::vector<const CsiFrame*>> per_stream;
    for (const CsiFrame& f : frames) per_stream[f.stream_id].push_back(&f);

    std::map<int, std::vector<CsiWindow>> out;
    for (auto& [stream_id, seq] : per_stream) {
        auto& windows = out[stream_id];

        const std::size_t expected_k = seq.front()->values.size();
        for (std::size_t i = 0; i < seq.size(); ++i) {
            if (seq[i]->values.size() != expected_k)
                throw std::invalid_argument(
                    "assemble_windows: stream " + std::to_string(stream_id) + " frame at t_us=" +
                    std::to_string(seq[i]->timestamp_us) + " has " +
                    std::to_string(seq[i]->values.size()) + " values, expected " +
                    std::to_string(expected_k));
        }

        auto emit_run = [&](std::size_t begin, std::size_t end) {
            for (std::size_t start = begin; start + len <= end; start += step) {
                CsiWindow w;
                w.nominal_rate_hz = nominal_rate_hz;
                w.frames.reserve(len);
                for (std::size_t j = start; j < start + len; ++j) w.frames.push_back(*seq[j]);
                windows.push_back(std::move(w));
            }
        };

        std::size_t run_begin = 0;
        for (std::size_t i = 1; i < seq.size(); ++i) {
            const double gap = static_cast<double>(seq[i]->timestamp_us - seq[i - 1]->timestamp_us);
            if (gap < lo || gap > hi) {
                emit_run(run_begin, i);
                run_begin = i;
            }
        }
        emit_run(run_begin, seq.size());
    }
    return out;
}

}  // namespace rapidpd
