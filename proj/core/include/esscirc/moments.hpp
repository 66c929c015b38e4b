#pragma once

#include <utility>
#include <vector>

#include "esscirc/ess.hpp"
#include "esscirc/rational.hpp"

namespace esscirc {

/// Largest skewing order supported by the moment machinery. The sine-power
/// expansions it needs go up to n = 2 * kMaxMomentOrder + 1 = 25, where the
/// integer coefficients still fit comfortably in doubles.
inline constexpr int kMaxMomentOrder = 12;

/// Expansion of sin^n(theta), n odd, into sines of multiple angles:
///   sin^n(theta) = sum_{k=0}^{(n-1)/2} coeffs[k] * sin((n - 2k) theta).
struct SinPowerExpansion {
    int n = 1;
    std::vector<Rational> exact;  // indexed by k; frequency n - 2k
    std::vector<double> coeffs;
};

/// Closed-form (binomial) route: coeff of sin((n-2k)theta) is
/// (-1)^{(n-1)/2 - k} binom(n, k) / 2^{n-1}.
SinPowerExpansion sin_power_coeffs_binomial(int n);

/// Triangular-system route: builds sin(q theta) = sum_j a_{q,j} sin^j theta
/// from de Moivre for every odd q <= n and back-solves the resulting
/// upper-triangular system for sin^n theta.
SinPowerExpansion sin_power_coeffs_triangular(int n);

/// The expansion used by the moment formulas. Both derivations are run in
/// exact arithmetic and must agree term by term; a mismatch throws.
SinPowerExpansion sin_power_coeffs(int n);

struct TrigMoments {
    int p = 1;
    double alpha = 0.0;                  // E cos(p Theta)
    double beta = 0.0;                   // E sin(p Theta)
    double mean_direction = 0.0;         // arg(alpha + i beta), in (-pi, pi]
    double mean_resultant_length = 0.0;  // |alpha + i beta|
};

/// Cosine and sine moments of the model recentered at mu = 0. The cosine
/// moment is just the base moment alpha_{0,p}; the sine moment combines the
/// skewing coefficients with the sine-power expansions of each odd power of
/// lambda sin(theta).
std::pair<double, double> centered_moments(const EssModel& model, int p);

/// Full pth trigonometric moment, rotated to the model's location.
/// Throws std::domain_error when the resultant length is below 1e-12 and the
/// mean direction is undefined.
TrigMoments moments(const EssModel& model, int p);

/// Circular skewness s = E{sin 2(Theta - MD_1)} / (1 - MRL_1)^{3/2}.
/// Undefined (throws) when 1 - MRL_1 < 1e-10.
double circular_skewness(const EssModel& model);

struct SkewnessRange {
    int order = 0;
    double s_min = 0.0;  // attained at lambda = +1
    double s_max = 0.0;  // attained at lambda = -1
    double kappa = 0.0;  // concentration maximizing |s|
    double lambda_at_max = -1.0;
};

/// Range of circular skewness attainable by the von Mises based family of
/// the given order: |s| is maximized over kappa in [0.01, 50] with the
/// skewness parameter pinned at +-1 (where the extrema occur), using a
/// coarse scan plus golden-section refinement.
SkewnessRange skewness_range_vm(int order);

}  // namespace esscirc
