#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rapidpd/config.hpp"

namespace rapidpd {

// Motion statistic of one window on one stream.
struct WindowStatistic {
    double phi = 0.0;
    int stream_id = 0;
    std::int64_t window_index = 0;
};

// Final call for one window position.
struct Verdict {
    std::int64_t window_index = 0;
    double overall = 0.0;                  // combined statistic across streams
    bool raw = false;                      // threshold decision for this window alone
    std::optional<bool> smoothed;          // vote over trailing windows; absent during warm-up
};

// Collapses a window's per-frame scores to one number, the mean by default.
// The sum mode is the same quantity scaled by T and pairs with a threshold
// scaled the same way.
inline WindowStatistic window_statistic(std::span<const double> psi, const DetectorConfig& config,
                                        int stream_id = 0, std::int64_t window_index = 0) {
    double acc = 0.0;
    for (double v : psi) acc += v;
    if (config.statistic_mode == StatisticMode::mean && !psi.empty())
        acc /= static_cast<double>(psi.size());
    return {acc, stream_id, window_index};
}

// Combines the per-stream statistics of one window position by summing.
// Every stream watches the same scene, so evidence accumulates.
inline double overall_statistic(std::span<const WindowStatistic> stats) {
    if (stats.empty())
        throw std::invalid_argument("overall_statistic: no stream statistics");
    const std::int64_t index = stats.front().window_index;
    double acc = 0.0;
    for (const WindowStatistic& s : stats) {
        if (s.window_index != index)
            throw std::invalid_argument("overall_statistic: mixed window indexes " +
                                        std::to_string(index) + " and " +
                                        std::to_string(s.window_index));
        acc += s.phi;
    }
    return acc;
}

// Presence when the statistic reaches the threshold; the boundary counts.
inline bool decide(double overall, const DetectorConfig& config) {
    return overall >= config.threshold;
}

// Majority vote over the trailing `span` raw decisions. Until `span`
// decisions have been seen the vote is undefined and push returns nullopt;
// what to report during that warm-up is the caller's safety policy.
class DecisionSmoother {
public:
    explicit DecisionSmoother(int span) : span_(span) {
        if (span < 1 || span % 2 == 0)
            throw std::invalid_argument("DecisionSmoother: span must be odd and positive");
    }

    std::optional<bool> push(bool raw) {
        recent_.push_back(raw);
        if (static_cast<int>(recent_.size()) > span_) recent_.pop_front();
        if (static_cast<int>(recent_.size()) < span_) return std::nullopt;
        int votes = 0;
        for (bool b : recent_) votes += b ? 1 : 0;
        return 2 * votes > span_;
    }

    int span() const { return span_; }

private:
    int span_;
    std::deque<bool> recent_;
};

inline std::vector<std::optional<bool>> smooth(const std::vector<bool>& raw, int span) {
    DecisionSmoother smoother(span);
    std::vector<std::optional<bool>> out;
    out.reserve(raw.size());
    for (bool b : raw) out.push_back(smoother.push(b));
    return out;
}

}  // namespace rapidpd
