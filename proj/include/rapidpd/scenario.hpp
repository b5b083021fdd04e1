#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "rapidpd/propagation.hpp"
#include "rapidpd/rng.hpp"
#include "rapidpd/subcarrier_grid.hpp"

namespace rapidpd {

enum class Scenario { empty, human, dog, cat };

inline const char* to_string(Scenario s) {
    switch (s) {
        case Scenario::empty: return "empty";
        case Scenario::human: return "human";
        case Scenario::dog: return "dog";
        case Scenario::cat: return "cat";
    }
    return "?";
}

inline Scenario scenario_from(const std::string& s) {
    if (s == "empty") return Scenario::empty;
    if (s == "human") return Scenario::human;
    if (s == "dog") return Scenario::dog;
    if (s == "cat") return Scenario::cat;
    throw std::invalid_argument("unknown scenario: " + s);
}

// A concrete cabin layout: the paths, the scenario name it was built for,
// and the parameters that went into it (kept as strings so output files can
// carry them).
struct SceneSpec {
    std::string name = "empty";
    PathSet paths;
    std::map<std::string, std::string> metadata;

    bool motile() const {
        for (const Path& p : paths)
            if (p.motile()) return true;
        return false;
    }
};

struct PresetOptions {
    int clutter_paths = 10;
    double motile_rcs_scale = 1.0;  // shrinks the occupant's reflection for low-SNR studies
};

namespace preset {
// Effective receive aperture, lambda^2 / 4 pi at 5.775 GHz.
inline constexpr double kRxAperture = 2.145e-4;
// Scattering cross sections of the occupant presets, m^2.
inline constexpr double kHumanRcs = 1.2;
inline constexpr double kDogRcs = 0.5;
inline constexpr double kCatRcs = 0.45;
// Micro-movement presets: breathing amplitude (one-sided, m) and rate (Hz).
inline constexpr double kHumanAmplitude = 8e-3;
inline constexpr double kHumanRate = 0.3;
inline constexpr double kDogAmplitude = 5e-3;
inline constexpr double kDogRate = 0.5;
inline constexpr double kCatAmplitude = 4e-3;
inline constexpr double kCatRate = 0.6;
// Additive noise: sigma = mean static amplitude / kNoiseDivisor.
inline constexpr double kNoiseDivisor = 140.0;
}  // namespace preset

// Builds a randomized cabin for the given scenario. Every scene has a
// direct Tx-Rx path and `clutter_paths` static two-hop reflections off the
// interior; occupied scenarios add one two-hop path whose first hop
// breathes. Geometry is drawn from `seed`, so the same seed reproduces the
// same cabin.
inline SceneSpec make_scene(Scenario scenario, std::uint64_t seed,
                            const PresetOptions& options = {}) {
    if (options.clutter_paths < 0)
        throw std::invalid_argument("make_scene: clutter_paths must be nonnegative");
    if (!(options.motile_rcs_scale > 0.0))
        throw std::invalid_argument("make_scene: motile_rcs_scale must be positive");

    auto rng = child_rng(seed, kSceneStream);
    std::uniform_real_distribution<double> direct_len(0.9, 1.4);
    std::uniform_real_distribution<double> clutter_len(0.5, 1.8);
    std::uniform_real_distribution<double> clutter_rcs(0.05, 0.4);
    std::uniform_real_distribution<double> occupant_len(0.9, 1.4);
    std::uniform_real_distribution<double> uphase(0.0, 2.0 * std::numbers::pi);

    SceneSpec scene;
    scene.name = to_string(scenario);

    Path direct;
    direct.segments.push_back({direct_len(rng), preset::kRxAperture});
    scene.paths.push_back(std::move(direct));

    for (int i = 0; i < options.clutter_paths; ++i) {
        Path p;
        p.segments.push_back({clutter_len(rng), clutter_rcs(rng)});
        p.segments.push_back({clutter_len(rng), preset::kRxAperture});
        scene.paths.push_back(std::move(p));
    }

    double rcs = 0.0;
    double amplitude = 0.0;
    double rate = 0.0;
    switch (scenario) {
        case Scenario::empty: break;
        case Scenario::human:
            rcs = preset::kHumanRcs;
            amplitude = preset::kHumanAmplitude;
            rate = preset::kHumanRate;
            break;
        case Scenario::dog:
            rcs = preset::kDogRcs;
            amplitude = preset::kDogAmplitude;
            rate = preset::kDogRate;
            break;
        case Scenario::cat:
            rcs = preset::kCatRcs;
            amplitude = preset::kCatAmplitude;
            rate = preset::kCatRate;
            break;
    }
    if (scenario != Scenario::empty) {
        Path occupant;
        occupant.segments.push_back({occupant_len(rng), rcs * options.motile_rcs_scale});
        occupant.segments.push_back({occupant_len(rng), preset::kRxAperture});
        occupant.motion.emplace(amplitude, rate, Waveform::sine, uphase(rng));
        scene.paths.push_back(std::move(occupant));
    }

    scene.metadata["scenario"] = scene.name;
    scene.metadata["clutter_paths"] = std::to_string(options.clutter_paths);
    scene.metadata["motile_rcs_scale"] = std::to_string(options.motile_rcs_scale);
    if (scenario != Scenario::empty) {
        scene.metadata["occupant_rcs_m2"] = std::to_string(rcs * options.motile_rcs_scale);
        scene.metadata["motion_amplitude_m"] = std::to_string(amplitude);
        scene.metadata["motion_rate_hz"] = std::to_string(rate);
    }
    return scene;
}

// Radio defaults for a scene: unit antenna gains, noise scaled to the
// scene's own mean static amplitude, gain switching on.
inline RadioModel default_radio(const SceneSpec& scene, const SubcarrierGrid& grid,
                                double noise_divisor = preset::kNoiseDivisor,
                                bool agc_enabled = true) {
    if (!(noise_divisor > 0.0))
        throw std::invalid_argument("default_radio: noise_divisor must be positive");
    const auto h = static_cfr(scene.paths, grid);
    double mean_amp = 0.0;
    for (const auto& v : h) mean_amp += std::abs(v);
    mean_amp /= static_cast<double>(h.size());
    RadioModel radio;
    radio.noise_sigma = mean_amp / noise_divisor;
    radio.agc.enabled = agc_enabled;
    return radio;
}

}  // namespace rapidpd
