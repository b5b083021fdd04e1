#pragma once

#include <iostream>
#include <stdexcept>
#include <vector>

namespace rapidpd {

// Frequency layout of one measured channel: `count` subcarriers spaced
// `spacing_hz` apart and centered on `center_hz`. Subcarrier i sits at
//
//   f_i = center_hz + (i - (count - 1) / 2) * spacing_hz,   i = 0 .. count-1,
//
// an ascending arithmetic progression anchored on the channel center.
class SubcarrierGrid {
public:
    SubcarrierGrid(double center_hz, double spacing_hz, int count)
        : center_hz_(center_hz), spacing_hz_(spacing_hz), count_(count) {
        if (count < 2)
            throw std::invalid_argument("SubcarrierGrid: count must be at least 2");
        if (!(spacing_hz > 0.0))
            throw std::invalid_argument("SubcarrierGrid: spacing_hz must be positive");
        if (!(center_hz > 0.0))
            throw std::invalid_argument("SubcarrierGrid: center_hz must be positive");
        // The detector assumes reflection strength is flat across the band,
        // which needs spacing << center frequency.
        if (spacing_hz / center_hz > 1e-2)
            std::cerr << "rapidpd: warning: subcarrier spacing is large against the "
                         "channel center (ratio " << spacing_hz / center_hz << ")\n";
    }

    double center_hz() const { return center_hz_; }
    double spacing_hz() const { return spacing_hz_; }
    int count() const { return count_; }

    double frequency(int i) const {
        return center_hz_ + (static_cast<double>(i) - 0.5 * (count_ - 1)) * spacing_hz_;
    }

    std::vector<double> frequencies() const {
        std::vector<double> f(static_cast<std::size_t>(count_));
        for (int i = 0; i < count_; ++i) f[static_cast<std::size_t>(i)] = frequency(i);
        return f;
    }

    bool operator==(const SubcarrierGrid&) const = default;

    // 80 MHz channel at 5775 MHz with 234 usable subcarriers.
    static SubcarrierGrid default_grid() { return {5.775e9, 312500.0, 234}; }

private:
    double center_hz_;
    double spacing_hz_;
    int count_;
};

}  // namespace rapidpd
