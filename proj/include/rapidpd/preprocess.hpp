#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "rapidpd/frame.hpp"
#include "rapidpd/matrix.hpp"
#include "rapidpd/subcarrier_grid.hpp"

namespace rapidpd {

// Amplitudes |H(t, f_i)| of one window: a T x K nonnegative matrix.
struct AmplitudeWindow {
    RowMatrix values;
    SubcarrierGrid grid = SubcarrierGrid::default_grid();
    int stream_id = 0;
};

// Amplitudes divided by their own per-frame total, so every row sums to 1.
// Scaling a frame by any positive gain leaves its normalized row unchanged,
// which is what strips receiver gain switching out of the pipeline.
struct NormalizedWindow {
    RowMatrix values;
    std::vector<double> row_sums;  // the totals that were divided out
    SubcarrierGrid grid = SubcarrierGrid::default_grid();
    int stream_id = 0;
};

inline AmplitudeWindow amplitude(const CsiWindow& window, const SubcarrierGrid& grid) {
    if (window.frames.empty())
        throw std::invalid_argument("amplitude: window has no frames");
    const std::size_t k = static_cast<std::size_t>(grid.count());
    AmplitudeWindow out{RowMatrix(window.frames.size(), k), grid, window.stream_id()};
    for (std::size_t t = 0; t < window.frames.size(); ++t) {
        const CsiFrame& f = window.frames[t];
        if (f.values.size() != k)
            throw std::invalid_argument("amplitude: frame at t_us=" +
                                        std::to_string(f.timestamp_us) + " has " +
                                        std::to_string(f.values.size()) +
                                        " values, grid expects " + std::to_string(k));
        for (std::size_t i = 0; i < k; ++i) out.values(t, i) = std::abs(f.values[i]);
    }
    return out;
}

// Per-frame total amplitude s(t) = sum_i |H(t, f_i)|.
inline std::vector<double> row_power(const AmplitudeWindow& window) {
    std::vector<double> s(window.values.rows, 0.0);
    for (std::size_t t = 0; t < window.values.rows; ++t) {
        double acc = 0.0;
        for (double v : window.values.row(t)) acc += v;
        s[t] = acc;
    }
    return s;
}

// Divides each row by its total. A row whose total is zero carries no signal
// at all and cannot be normalized; that is a data defect, not a detector
// outcome, so it throws.
inline NormalizedWindow normalize(const AmplitudeWindow& window) {
    NormalizedWindow out{RowMatrix(window.values.rows, window.values.cols),
                         row_power(window), window.grid, window.stream_id};
    for (std::size_t t = 0; t < window.values.rows; ++t) {
        const double s = out.row_sums[t];
        if (!(s > 0.0))
            throw std::domain_error("normalize: frame " + std::to_string(t) +
                                    " has zero total amplitude");
        for (std::size_t i = 0; i < window.values.cols; ++i)
            out.values(t, i) = window.values(t, i) / s;
    }
    return out;
}

}  // namespace rapidpd
