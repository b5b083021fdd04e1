#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rapidpd {

// Confusion counts and the derived rates. "Positive" means occupied.
struct EvaluationReport {
    long tp = 0;
    long fp = 0;
    long tn = 0;
    long fn = 0;
    double accuracy = 0.0;
    double tpr = 0.0;  // detected occupied / actually occupied
    double fpr = 0.0;  // declared occupied / actually empty
    std::map<std::string, std::pair<long, long>> per_scenario;  // correct, total
    // Sorted statistic values per class, the empirical CDF support. Filled by
    // attach_cdf when the statistic values are at hand.
    std::vector<double> cdf_occupied;
    std::vector<double> cdf_empty;

    long total() const { return tp + fp + tn + fn; }
};

inline void attach_cdf(EvaluationReport& report, std::span<const double> phi,
                       std::span<const int> labels) {
    if (phi.size() != labels.size())
        throw std::invalid_argument("attach_cdf: statistic and label lengths differ");
    report.cdf_occupied.clear();
    report.cdf_empty.clear();
    for (std::size_t i = 0; i < phi.size(); ++i)
        (labels[i] != 0 ? report.cdf_occupied : report.cdf_empty).push_back(phi[i]);
    std::sort(report.cdf_occupied.begin(), report.cdf_occupied.end());
    std::sort(report.cdf_empty.begin(), report.cdf_empty.end());
}

// Scores binary predictions against labels. `scenarios`, when nonempty,
// must align with `labels` and adds a correct/total breakdown per scenario
// name. Rates with an empty denominator report zero.
inline EvaluationReport evaluate(std::span<const int> predicted, std::span<const int> labels,
                                 std::span<const std::string> scenarios = {}) {
    if (predicted.size() != labels.size())
        throw std::invalid_argument("evaluate: " + std::to_string(predicted.size()) +
                                    " predictions vs " + std::to_string(labels.size()) +
                                    " labels");
    if (!scenarios.empty() && scenarios.size() != labels.size())
        throw std::invalid_argument("evaluate: scenario list does not align with labels");
    if (predicted.empty())
        throw std::invalid_argument("evaluate: nothing to score");
    EvaluationReport r;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const bool p = predicted[i] != 0;
        const bool y = labels[i] != 0;
        if (p && y) ++r.tp;
        else if (p && !y) ++r.fp;
        else if (!p && y) ++r.fn;
        else ++r.tn;
        if (!scenarios.empty()) {
            auto& [correct, total] = r.per_scenario[scenarios[i]];
            correct += (p == y) ? 1 : 0;
            ++total;
        }
    }
    r.accuracy = static_cast<double>(r.tp + r.tn) / static_cast<double>(r.total());
    r.tpr = (r.tp + r.fn) > 0 ? static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fn) : 0.0;
    r.fpr = (r.fp + r.tn) > 0 ? static_cast<double>(r.fp) / static_cast<double>(r.fp + r.tn) : 0.0;
    return r;
}

struct RocPoint {
    double eta = 0.0;
    double fpr = 0.0;
    double tpr = 0.0;
};

struct RocCurve {
    std::vector<RocPoint> points;  // sorted by eta ascending
    double auc = 0.0;
};

// Sweeps the presence threshold over scored windows. With resolution <= 0
// every distinct statistic value becomes a candidate threshold, which
// traces the exact staircase; otherwise `resolution` thresholds are spaced
// evenly across the observed range. Both ends are always included: a
// threshold below every value accepts everything (FPR = TPR = 1) and one
// above every value accepts nothing (0, 0). The area under the curve is
// the trapezoid sum over FPR.
inline RocCurve roc_sweep(std::span<const double> phi, std::span<const int> labels,
                          int resolution = 0) {
    if (phi.size() != labels.size())
        throw std::invalid_argument("roc_sweep: " + std::to_string(phi.size()) +
                                    " statistics vs " + std::to_string(labels.size()) +
                                    " labels");
    long pos = 0;
    long neg = 0;
    for (int y : labels) (y != 0 ? pos : neg) += 1;
    if (pos == 0 || neg == 0)
        throw std::invalid_argument("roc_sweep: need both occupied and empty windows");

    std::vector<double> etas;
    double lo = phi[0];
    double hi = phi[0];
    for (double v : phi) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (resolution <= 0) {
        etas.assign(phi.begin(), phi.end());
        std::sort(etas.begin(), etas.end());
        etas.erase(std::unique(etas.begin(), etas.end()), etas.end());
    } else {
        etas.resize(static_cast<std::size_t>(resolution));
        const double span = hi - lo;
        for (int i = 0; i < resolution; ++i)
            etas[static_cast<std::size_t>(i)] =
                lo + span * (resolution == 1 ? 0.0
                                             : static_cast<double>(i) /
                                                   static_cast<double>(resolution - 1));
    }
    if (etas.empty() || etas.front() > lo) etas.insert(etas.begin(), lo);
    etas.push_back(std::nextafter(hi, std::numeric_limits<double>::infinity()));

    RocCurve curve;
    curve.points.reserve(etas.size());
    for (double eta : etas) {
        long tp = 0;
        long fp = 0;
        for (std::size_t i = 0; i < phi.size(); ++i) {
            if (phi[i] >= eta) (labels[i] != 0 ? tp : fp) += 1;
        }
        curve.points.push_back({eta, static_cast<double>(fp) / static_cast<double>(neg),
                                static_cast<double>(tp) / static_cast<double>(pos)});
    }

    // Trapezoid area over FPR; the sweep above makes FPR nonincreasing in
    // eta, so reverse order walks the curve left to right.
    double auc = 0.0;
    for (std::size_t i = curve.points.size(); i-- > 1;) {
        const RocPoint& a = curve.points[i];
        const RocPoint& b = curve.points[i - 1];
        auc += (b.fpr - a.fpr) * 0.5 * (a.tpr + b.tpr);
    }
    curve.auc = auc;
    return curve;
}

}  // namespace rapidpd
