#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace rapidpd {

// One packet's channel estimate for a single Tx-Rx stream: K complex values,
// one per subcarrier, in ascending grid order.
struct CsiFrame {
    std::int64_t timestamp_us = 0;
    int stream_id = 0;
    std::vector<std::complex<double>> values;
    std::optional<double> agc_gain;  // receiver gain applied to this frame, if known

    bool finite() const {
        for (const auto& v : values)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }
};

// T consecutive frames of one stream captured at a nominal packet rate.
// All frames share the stream id and value count.
struct CsiWindow {
    std::vector<CsiFrame> frames;
    double nominal_rate_hz = 0.0;

    std::size_t length() const { return frames.size(); }
    std::size_t subcarriers() const { return frames.empty() ? 0 : frames.front().values.size(); }
    int stream_id() const { return frames.empty() ? 0 : frames.front().stream_id; }
};

}  // namespace rapidpd
