#pragma once

#include <cmath>
#include <numbers>

namespace esscirc {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps an angle into [-pi, pi). The convention used everywhere in this
/// library: ((theta + pi) mod 2pi) - pi, with the mod result forced
/// non-negative so that wrap_pi(pi) == -pi.
inline double wrap_pi(double theta) noexcept {
    double t = std::fmod(theta + kPi, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    return t - kPi;
}

}  // namespace esscirc
