#pragma once

#include <stdexcept>
#include <string>

namespace rapidpd {

enum class StatisticMode { mean, sum };

inline const char* to_string(StatisticMode m) {
    return m == StatisticMode::mean ? "mean" : "sum";
}

inline StatisticMode statistic_mode_from(const std::string& s) {
    if (s == "mean") return StatisticMode::mean;
    if (s == "sum") return StatisticMode::sum;
    throw std::invalid_argument("unknown statistic_mode: " + s);
}

// Detection parameters. Defaults are the deployed operating point: 1 s
// windows of 20 frames, 3 correlation layers, 3-window vote, threshold 0.43.
struct DetectorConfig {
    int window_len = 20;        // frames per window (T)
    int layers = 3;             // correlation layers applied per row (n)
    int smooth_windows = 3;     // trailing majority-vote span (m), odd
    double threshold = 0.43;    // presence cutoff on the overall statistic
    StatisticMode statistic_mode = StatisticMode::mean;
    int lag_index = 1;          // subcarrier lag read off the final layer
    bool safety_on = true;      // warm-up windows report present when set
    bool centered = false;      // remove the row mean before correlating
    int window_step = 0;        // frames between window starts; 0 = window_len

    int step() const { return window_step == 0 ? window_len : window_step; }

    void validate() const {
        if (window_len < 2)
            throw std::invalid_argument("DetectorConfig: window_len must be at least 2");
        if (layers < 1)
            throw std::invalid_argument("DetectorConfig: layers must be at least 1");
        if (smooth_windows < 1 || smooth_windows % 2 == 0)
            throw std::invalid_argument("DetectorConfig: smooth_windows must be odd and positive");
        if (lag_index < 1)
            throw std::invalid_argument("DetectorConfig: lag_index must be at least 1");
        if (window_step < 0)
            throw std::invalid_argument("DetectorConfig: window_step must be nonnegative");
    }
};

}  // namespace rapidpd
