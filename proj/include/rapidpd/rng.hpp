#pragma once

#include <cstdint>
#include <random>

namespace rapidpd {

// splitmix64 finalizer; full avalanche, so nearby inputs give unrelated outputs.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stable child seed for (seed, tag, index). Separate tags give independent
// draw streams, so enabling one randomized component never shifts another.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index = 0) {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ tag);
    h = mix64(h ^ index);
    return h;
}

inline std::mt19937_64 child_rng(std::uint64_t seed, std::uint64_t tag, std::uint64_t index = 0) {
    return std::mt19937_64(derive_seed(seed, tag, index));
}

// Draw-stream tags used across the library.
inline constexpr std::uint64_t kNoiseStream = 0x6e6f697365ULL;    // per-frame receiver noise
inline constexpr std::uint64_t kAgcStream = 0x616763ULL;          // gain switching process
inline constexpr std::uint64_t kSceneStream = 0x7363656e65ULL;    // scene geometry
inline constexpr std::uint64_t kMotionStream = 0x6d6f74696fULL;   // random motion phases
inline constexpr std::uint64_t kRxChainStream = 0x7278ULL;        // per-stream radio realization

}  // namespace rapidpd
