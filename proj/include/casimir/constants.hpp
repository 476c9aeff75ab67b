#pragma once

#include <numbers>

namespace casimir {

// CODATA 2018, SI.
inline constexpr double kSpeedOfLight = 299792458.0;           // m s^-1
inline constexpr double kHbar = 1.054571817e-34;               // J s
inline constexpr double kMu0 = 1.25663706212e-6;               // N A^-2
inline constexpr double kEpsilon0 = 1.0 / (kMu0 * kSpeedOfLight * kSpeedOfLight);  // F m^-1

inline constexpr double kPi = std::numbers::pi;

}  // namespace casimir
