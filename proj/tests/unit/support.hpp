#pragma once

#include <cmath>
#include <complex>

#include "casimir/constants.hpp"

namespace support {

inline constexpr double kOmega10 = 2.0e15;     // rad/s
inline constexpr double kDipoleSq = 1.0e-58;   // C^2 m^2
inline constexpr double kLength = casimir::kSpeedOfLight / (2.0 * kOmega10);  // z_tilde = 1

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
inline double rel(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) / std::abs(b); }

}  // namespace support
