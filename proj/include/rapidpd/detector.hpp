#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rapidpd/config.hpp"
#include "rapidpd/matrix.hpp"
#include "rapidpd/preprocess.hpp"

namespace rapidpd {

// Per-subcarrier reference amplitude: the time mean of each normalized
// column. Micro-movement shows up as deviation around this reference.
struct BenchmarkCfr {
    std::vector<double> values;
};

// Normalized window minus its benchmark, row by row. Static propagation
// cancels here; what is left is noise plus any motion-induced wobble, and
// the wobble is smooth across neighboring subcarriers while noise is not.
struct ResidualWindow {
    RowMatrix values;
};

// Correlation-by-lag sequence of one residual row. values[k] is the layer-n
// correlation at a lag of k subcarrier spacings; values[0] == 1.
struct LagSeries {
    std::vector<double> values;
    int layer = 1;
};

// Column means anchored on the first row, so a window of identical rows
// produces a benchmark exactly equal to each row (and thus an exactly zero
// residual) instead of one polluted by summation rounding.
inline BenchmarkCfr benchmark_cfr(const NormalizedWindow& window) {
    const RowMatrix& m = window.values;
    if (m.rows < 2)
        throw std::invalid_argument("benchmark_cfr: need at least 2 frames");
    BenchmarkCfr b;
    b.values.assign(m.cols, 0.0);
    for (std::size_t i = 0; i < m.cols; ++i) {
        double acc = 0.0;
        for (std::size_t t = 1; t < m.rows; ++t) acc += m(t, i) - m(0, i);
        b.values[i] = m(0, i) + acc / static_cast<double>(m.rows);
    }
    return b;
}

inline ResidualWindow residual(const NormalizedWindow& window, const BenchmarkCfr& benchmark) {
    const RowMatrix& m = window.values;
    if (benchmark.values.size() != m.cols)
        throw std::invalid_argument("residual: benchmark length " +
                                    std::to_string(benchmark.values.size()) +
                                    " does not match " + std::to_string(m.cols) +
                                    " subcarriers");
    ResidualWindow out{RowMatrix(m.rows, m.cols)};
    for (std::size_t t = 0; t < m.rows; ++t)
        for (std::size_t i = 0; i < m.cols; ++i)
            out.values(t, i) = m(t, i) - benchmark.values[i];
    return out;
}

// Biased sample autocovariance at lag k: (1/K) * sum_j x[j] * x[j+k], with
// no mean removal and the full length K as divisor regardless of lag. The
// residual is already centered by the benchmark; skipping a second centering
// keeps any leftover offset visible instead of silently absorbing it.
inline double sample_autocov(std::span<const double> x, int k) {
    const int n = static_cast<int>(x.size());
    if (k < 0 || k >= n)
        throw std::out_of_range("sample_autocov: lag " + std::to_string(k) +
                                " outside [0, " + std::to_string(n) + ")");
    double acc = 0.0;
    for (int j = 0; j + k < n; ++j) acc += x[j] * x[j + k];
    return acc / static_cast<double>(n);
}

// Full correlation-by-lag sequence of one row: rho(k) = gamma(k) / gamma(0)
// for k = 0 .. K-1. Returns nullopt when gamma(0) is exactly zero: the row
// is identically flat, carries no motion evidence, and the caller scores it
// as zero. gamma(0) is a sum of squares, so it is zero only for an all-zero
// row; near-flat rows still divide through cleanly.
inline std::optional<LagSeries> acf(std::span<const double> x) {
    if (x.size() < 2)
        throw std::invalid_argument("acf: need at least 2 samples");
    const double g0 = sample_autocov(x, 0);
    if (g0 == 0.0) return std::nullopt;
    LagSeries out;
    out.layer = 1;
    out.values.resize(x.size());
    out.values[0] = 1.0;
    for (int k = 1; k < static_cast<int>(x.size()); ++k)
        out.values[static_cast<std::size_t>(k)] = sample_autocov(x, k) / g0;
    return out;
}

// Stacked correlation: each layer past the first applies the same estimator
// to the previous layer's full lag sequence (lag 0 included, no mean
// removal) and renormalizes by that sequence's own zero-lag term. One layer
// is the plain normalized sequence. A smooth, slowly decaying sequence --
// the signature of motion spread across neighboring subcarriers -- keeps
// reinforcing itself under this iteration, while the near-zero lags of pure
// noise shrink further, which widens the margin between the two.
//
// `centered` removes the row mean before the first layer only; it exists
// for side-by-side comparison runs and defaults to off.
inline std::optional<LagSeries> multi_layer_acf(std::span<const double> x, int layers,
                                                bool centered = false) {
    if (layers < 1)
        throw std::invalid_argument("multi_layer_acf: layers must be at least 1");
    std::vector<double> centered_row;
    std::span<const double> first = x;
    if (centered) {
        centered_row.assign(x.begin(), x.end());
        double acc = 0.0;
        for (double v : centered_row) acc += v;
        const double mean = acc / static_cast<double>(centered_row.size());
        for (double& v : centered_row) v -= mean;
        first = centered_row;
    }
    std::optional<LagSeries> series = acf(first);
    if (!series) return std::nullopt;
    for (int layer = 2; layer <= layers; ++layer) {
        // Layer inputs start with values[0] == 1, so gamma(0) > 0 and the
        // recursion cannot go flat after the first layer.
        std::optional<LagSeries> next = acf(series->values);
        if (!next) return std::nullopt;
        next->layer = layer;
        series = std::move(next);
    }
    return series;
}

// Per-frame motion scores of one window: psi[t] is the final-layer
// correlation at config.lag_index for row t of the residual, or 0 for an
// exactly flat row.
inline std::vector<double> detect_window(const NormalizedWindow& window,
                                         const DetectorConfig& config) {
    config.validate();
    if (static_cast<std::size_t>(config.lag_index) >= window.values.cols)
        throw std::invalid_argument("detect_window: lag_index " +
                                    std::to_string(config.lag_index) +
                                    " out of range for " + std::to_string(window.values.cols) +
                                    " subcarriers");
    const ResidualWindow res = residual(window, benchmark_cfr(window));
    std::vector<double> psi(res.values.rows, 0.0);
    for (std::size_t t = 0; t < res.values.rows; ++t) {
        const std::optional<LagSeries> series =
            multi_layer_acf(res.values.row(t), config.layers, config.centered);
        psi[t] = series ? series->values[static_cast<std::size_t>(config.lag_index)] : 0.0;
    }
    return psi;
}

}  // namespace rapidpd
