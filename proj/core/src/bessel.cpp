#include "esscirc/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace esscirc {
namespace {

struct MillerSums {
    double f_p;     // unnormalized value at the requested order
    double f_0;     // unnormalized value at order 0
    double f_tail;  // sum of unnormalized values over orders 1..start
};

// Backward recurrence f_{k-1} = f_{k+1} + (2k/kappa) f_k seeded with a tiny
// value well above the target order. Forward recurrence is unstable for
// p > kappa, the downward direction is self-correcting. All quantities are
// rescaled together whenever they grow large, so only ratios survive.
MillerSums miller_recurrence(int p, double kappa) {
    const int start = std::max(p, static_cast<int>(kappa)) + 60;
    double f_next = 0.0;
    double f = 1e-280;
    double f_p = (p == start) ? f : 0.0;
    double tail = 0.0;
    for (int k = start; k >= 1; --k) {
        tail += f;  // f currently holds f_k, k >= 1
        if (k == p) f_p = f;
        const double f_prev = f_next + (2.0 * k / kappa) * f;
        f_next = f;
        f = f_prev;
        if (f > 1e250) {
            f *= 1e-250;
            f_next *= 1e-250;
            tail *= 1e-250;
            f_p *= 1e-250;
        }
    }
    if (p == 0) f_p = f;
    return {f_p, f, tail};
}

void check_args(int p, double kappa) {
    if (p < 0) throw std::invalid_argument("bessel: order must be >= 0");
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw std::invalid_argument("bessel: kappa must be positive and finite");
}

}  // namespace

double bessel_i_ratio(int p, double kappa) {
    check_args(p, kappa);
    if (p == 0) return 1.0;
    const MillerSums s = miller_recurrence(p, kappa);
    return s.f_p / s.f_0;
}

double log_bessel_i0(double kappa) {
    check_args(0, kappa);
    const MillerSums s = miller_recurrence(0, kappa);
    // e^kappa = I_0 + 2 sum_{k>=1} I_k, applied at the common scale of f.
    return kappa + std::log(s.f_0) - std::log(s.f_0 + 2.0 * s.f_tail);
}

}  // namespace esscirc
