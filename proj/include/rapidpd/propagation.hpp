#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rapidpd/rng.hpp"
#include "rapidpd/subcarrier_grid.hpp"

namespace rapidpd {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

// One hop of a propagation path. `rcs_m2` is the scattering cross section
// presented at the end of the hop; the last hop of every path carries the
// receive antenna's effective aperture instead of a scatterer.
struct PathSegment {
    double base_length_m = 0.0;
    double rcs_m2 = 0.0;
};

enum class Waveform { sine, triangle, band_limited_random };

inline const char* to_string(Waveform w) {
    switch (w) {
        case Waveform::sine: return "sine";
        case Waveform::triangle: return "triangle";
        case Waveform::band_limited_random: return "band_limited_random";
    }
    return "?";
}

inline Waveform waveform_from(const std::string& s) {
    if (s == "sine") return Waveform::sine;
    if (s == "triangle") return Waveform::triangle;
    if (s == "band_limited_random") return Waveform::band_limited_random;
    throw std::invalid_argument("unknown waveform: " + s);
}

// Periodic (or band-limited random) change of a path's total length over
// time. `amplitude_m` bounds |displacement| and must stay in the
// micro-movement regime, a few centimeters at most, where the amplitude
// factors of the path response are effectively constant and only the phase
// moves.
class MotionProfile {
public:
    MotionProfile(double amplitude_m, double rate_hz, Waveform waveform = Waveform::sine,
                  double phase_offset_rad = 0.0, std::uint64_t seed = 0)
        : amplitude_m_(amplitude_m), rate_hz_(rate_hz), waveform_(waveform),
          phase_offset_rad_(phase_offset_rad) {
        if (!(amplitude_m >= 0.0) || amplitude_m > 0.05)
            throw std::invalid_argument(
                "MotionProfile: amplitude must lie in [0, 0.05] m, got " +
                std::to_string(amplitude_m));
        if (!(rate_hz > 0.0))
            throw std::invalid_argument("MotionProfile: rate_hz must be positive");
        if (waveform_ == Waveform::band_limited_random) {
            // Fixed comb of incommensurate tones below the nominal rate with
            // seeded phases; weights sum to 1 so |displacement| <= amplitude.
            auto rng = child_rng(seed, kMotionStream);
            std::uniform_real_distribution<double> uphase(0.0, 2.0 * std::numbers::pi);
            for (std::size_t c = 0; c < kTones; ++c) {
                tone_rate_[c] = rate_hz_ * (0.25 + 0.75 * static_cast<double>(c) /
                                                       static_cast<double>(kTones - 1));
                tone_phase_[c] = uphase(rng);
            }
        }
    }

    double amplitude_m() const { return amplitude_m_; }
    double rate_hz() const { return rate_hz_; }
    Waveform waveform() const { return waveform_; }
    double phase_offset_rad() const { return phase_offset_rad_; }

    // Path-length change in meters at time t; zero at t = 0 for sine and
    // triangle with zero phase offset.
    double displacement(double t_s) const {
        switch (waveform_) {
            case Waveform::sine:
                return amplitude_m_ *
                       std::sin(2.0 * std::numbers::pi * rate_hz_ * t_s + phase_offset_rad_);
            case Waveform::triangle: {
                const double cycles =
                    rate_hz_ * t_s + phase_offset_rad_ / (2.0 * std::numbers::pi);
                const double s = cycles - std::floor(cycles);
                double u;
                if (s < 0.25) u = 4.0 * s;
                else if (s < 0.75) u = 2.0 - 4.0 * s;
                else u = 4.0 * s - 4.0;
                return amplitude_m_ * u;
            }
            case Waveform::band_limited_random: {
                double acc = 0.0;
                for (std::size_t c = 0; c < kTones; ++c)
                    acc += std::cos(2.0 * std::numbers::pi * tone_rate_[c] * t_s +
                                    tone_phase_[c]);
                return amplitude_m_ * acc / static_cast<double>(kTones);
            }
        }
        return 0.0;
    }

private:
    static constexpr std::size_t kTones = 8;
    double amplitude_m_;
    double rate_hz_;
    Waveform waveform_;
    double phase_offset_rad_;
    std::array<double, kTones> tone_rate_{};
    std::array<double, kTones> tone_phase_{};
};

// A propagation path: one or more hops, optionally with motion. Motion
// displaces the first hop's length; the other hops stay put.
struct Path {
    std::vector<PathSegment> segments;
    std::optional<MotionProfile> motion;

    void validate() const {
        if (segments.empty())
            throw std::invalid_argument("Path: needs at least one segment");
        for (const PathSegment& s : segments) {
            if (!(s.base_length_m > 0.0))
                throw std::domain_error("Path: segment length must be positive, got " +
                                        std::to_string(s.base_length_m));
            if (!(s.rcs_m2 > 0.0))
                throw std::domain_error("Path: segment rcs must be positive, got " +
                                        std::to_string(s.rcs_m2));
        }
        if (motion && !(motion->amplitude_m() < segments.front().base_length_m))
            throw std::domain_error("Path: motion amplitude must stay below the first "
                                    "segment length");
    }

    bool motile() const { return motion.has_value() && motion->amplitude_m() > 0.0; }
};

using PathSet = std::vector<Path>;

// Sample-and-hold gain switching. Levels are drawn uniformly from `levels`
// and held for a geometrically distributed number of frames whose mean
// corresponds to `mean_dwell_s`.
struct AgcProcess {
    bool enabled = false;
    std::vector<double> levels = {0.8, 0.9, 1.0, 1.12, 1.25};
    double mean_dwell_s = 2.0;
};

struct RadioModel {
    double tx_gain = 1.0;
    double rx_gain = 1.0;
    double noise_sigma = 0.0;  // std of each noise quadrature, added per subcarrier
    AgcProcess agc;
};

// Response of one path at one frequency, evaluated at the given per-segment
// lengths: amplitude tx*rx * prod_m rcs_m / (4 pi L_m^2), phase
// (2 pi f / c) * sum_m L_m plus pi per bounce (each of the M-1 interior
// scatterers inverts the field).
inline std::complex<double> path_response(const Path& path, double freq_hz,
                                          std::span<const double> lengths_m,
                                          double tx_gain = 1.0, double rx_gain = 1.0) {
    path.validate();
    if (lengths_m.size() != path.segments.size())
        throw std::invalid_argument("path_response: " + std::to_string(lengths_m.size()) +
                                    " lengths for " + std::to_string(path.segments.size()) +
                                    " segments");
    if (!(freq_hz > 0.0))
        throw std::invalid_argument("path_response: freq_hz must be positive");
    double amp = tx_gain * rx_gain;
    double total_len = 0.0;
    for (std::size_t m = 0; m < lengths_m.size(); ++m) {
        const double len = lengths_m[m];
        if (!(len > 0.0))
            throw std::domain_error("path_response: segment length must be positive, got " +
                                    std::to_string(len));
        amp *= path.segments[m].rcs_m2 / (4.0 * std::numbers::pi * len * len);
        total_len += len;
    }
    const double phase = 2.0 * std::numbers::pi * freq_hz / kSpeedOfLight * total_len +
                         static_cast<double>(path.segments.size() - 1) * std::numbers::pi;
    return std::polar(amp, phase);
}

inline std::vector<double> base_lengths(const Path& path) {
    std::vector<double> lengths;
    lengths.reserve(path.segments.size());
    for (const PathSegment& s : path.segments) lengths.push_back(s.base_length_m);
    return lengths;
}

// Frequency response of a motionless scene: the coherent sum of every
// path's response at each subcarrier.
inline std::vector<std::complex<double>> static_cfr(const PathSet& paths,
                                                    const SubcarrierGrid& grid,
                                                    double tx_gain = 1.0,
                                                    double rx_gain = 1.0) {
    if (paths.empty())
        throw std::domain_error("static_cfr: empty path set");
    std::vector<std::complex<double>> h(static_cast<std::size_t>(grid.count()), {0.0, 0.0});
    for (const Path& p : paths) {
        const std::vector<double> lengths = base_lengths(p);
        for (int i = 0; i < grid.count(); ++i)
            h[static_cast<std::size_t>(i)] +=
                path_response(p, grid.frequency(i), lengths, tx_gain, rx_gain);
    }
    return h;
}

enum class CfrRoute {
    direct,      // reevaluate every path at its displaced lengths
    factorized   // static response times a pure phase rotation per path
};

struct DynamicCfrOptions {
    CfrRoute route = CfrRoute::direct;
    // Direct route only: evaluate amplitudes at the base lengths while the
    // phase follows the displaced lengths. Isolates the phase effect for
    // comparison against the factorized route.
    bool freeze_amplitude = false;
};

// Frequency response of the scene at time t. The factorized route applies
// exp(j 2 pi f / c * dR(t)) to each path's static response, which is the
// micro-movement shortcut: for millimeter displacements on meter-scale
// paths the amplitude factors barely move and only the phase matters.
inline std::vector<std::complex<double>> dynamic_cfr(const PathSet& paths, double t_s,
                                                     const SubcarrierGrid& grid,
                                                     double tx_gain = 1.0,
                                                     double rx_gain = 1.0,
                                                     const DynamicCfrOptions& options = {}) {
    if (paths.empty())
        throw std::domain_error("dynamic_cfr: empty path set");
    const std::size_t k = static_cast<std::size_t>(grid.count());
    std::vector<std::complex<double>> h(k, {0.0, 0.0});
    for (const Path& p : paths) {
        const std::vector<double> base = base_lengths(p);
        const double dr = p.motion ? p.motion->displacement(t_s) : 0.0;
        if (options.route == CfrRoute::factorized) {
            for (int i = 0; i < grid.count(); ++i) {
                const double f = grid.frequency(i);
                h[static_cast<std::size_t>(i)] +=
                    path_response(p, f, base, tx_gain, rx_gain) *
                    std::polar(1.0, 2.0 * std::numbers::pi * f / kSpeedOfLight * dr);
            }
        } else {
            std::vector<double> moved = base;
            moved[0] += dr;
            for (int i = 0; i < grid.count(); ++i) {
                const double f = grid.frequency(i);
                std::complex<double> r = path_response(p, f, moved, tx_gain, rx_gain);
                if (options.freeze_amplitude) {
                    const std::complex<double> at_base =
                        path_response(p, f, base, tx_gain, rx_gain);
                    r = std::polar(std::abs(at_base), std::arg(r));
                }
                h[static_cast<std::size_t>(i)] += r;
            }
        }
    }
    return h;
}

}  // namespace rapidpd
