// units.hpp — Unit convention and the few physical constants we need.
//
// Internally every frequency-like quantity is angular (rad/s) and every time
// is in seconds. Config files, CLI flags, and CSV columns use ordinary
// frequencies (Hz) and are converted exactly once at the boundary.

#pragma once

#include <cmath>

namespace transim {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kHbar = 1.054571817e-34;      // J s
inline constexpr double kBoltzmann = 1.380649e-23;    // J / K
inline constexpr double kSpeedOfLight = 2.99792458e8; // m / s

constexpr double rad_from_hz(double f_hz) { return kTwoPi * f_hz; }
constexpr double hz_from_rad(double w) { return w / kTwoPi; }

// Bose-Einstein occupancy of a mode at angular frequency w for a bath at
// temperature t_kelvin. Zero or negative temperature maps to an empty bath.
inline double bose_occupancy(double w, double t_kelvin) {
    if (t_kelvin <= 0.0 || w <= 0.0) return 0.0;
    return 1.0 / std::expm1(kHbar * w / (kBoltzmann * t_kelvin));
}

// Inverse of bose_occupancy in the temperature argument, used by tests that
// pick a bath temperature realizing a wanted occupancy.
inline double bath_temperature_for_occupancy(double w, double n_target) {
    if (n_target <= 0.0) return 0.0;
    return kHbar * w / (kBoltzmann * std::log1p(1.0 / n_target));
}

}  // namespace transim
