#pragma once

#include <cmath>
#include <span>

namespace esscirc {

/// Sample mean direction atan2(sum sin, sum cos).
inline double circ_mean_direction(std::span<const double> data) noexcept {
    double c = 0.0, s = 0.0;
    for (double t : data) {
        c += std::cos(t);
        s += std::sin(t);
    }
    return std::atan2(s, c);
}

/// Sample mean resultant length |sum e^{i theta}| / n.
inline double circ_mean_resultant(std::span<const double> data) noexcept {
    double c = 0.0, s = 0.0;
    for (double t : data) {
        c += std::cos(t);
        s += std::sin(t);
    }
    return std::hypot(c, s) / static_cast<double>(data.size());
}

}  // namespace esscirc
