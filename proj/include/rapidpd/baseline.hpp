#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "rapidpd/preprocess.hpp"

namespace rapidpd {

// Time-direction comparison statistic for one window on one stream.
struct BaselineStatistic {
    double phi_time = 0.0;
    int stream_id = 0;
    std::int64_t window_index = 0;
};

// Reference detector that correlates along time instead of across
// subcarriers: each subcarrier is a length-T series; its mean is removed,
// and the biased lag-1 autocorrelation c(1)/c(0) is averaged over all
// subcarriers. A constant series has c(0) == 0 and contributes zero.
//
// With only T samples per series this estimator is noisy and biased low,
// which is exactly the weakness the subcarrier-direction detector avoids;
// it is kept for side-by-side evaluation.
inline BaselineStatistic baseline_window_statistic(const NormalizedWindow& window,
                                                  int stream_id = 0,
                                                  std::int64_t window_index = 0) {
    const RowMatrix& m = window.values;
    if (m.rows < 3)
        throw std::invalid_argument("baseline_window_statistic: need at least 3 frames, got " +
                                    std::to_string(m.rows));
    const double t_count = static_cast<double>(m.rows);
    double acc = 0.0;
    for (std::size_t i = 0; i < m.cols; ++i) {
        // Mean anchored on the first sample so a constant series centers to
        // exact zeros rather than rounding residue.
        double off = 0.0;
        for (std::size_t t = 1; t < m.rows; ++t) off += m(t, i) - m(0, i);
        const double mean = m(0, i) + off / t_count;
        double c0 = 0.0;
        double c1 = 0.0;
        for (std::size_t t = 0; t < m.rows; ++t) {
            const double d = m(t, i) - mean;
            c0 += d * d;
            if (t + 1 < m.rows) c1 += d * (m(t + 1, i) - mean);
        }
        if (c0 > 0.0) acc += c1 / c0;
    }
    return {acc / static_cast<double>(m.cols), stream_id, window_index};
}

}  // namespace rapidpd
