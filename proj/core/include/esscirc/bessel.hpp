#pragma once

namespace esscirc {

/// Ratio I_p(kappa) / I_0(kappa) of modified Bessel functions of the first
/// kind, for integer p >= 0 and kappa > 0. Computed with a Miller-style
/// backward recurrence normalized at order 0, so it stays on scale for
/// kappa up to several hundred where I_p itself would overflow.
double bessel_i_ratio(int p, double kappa);

/// log I_0(kappa), normalized through the identity e^kappa = I_0 + 2 sum I_k.
double log_bessel_i0(double kappa);

}  // namespace esscirc
