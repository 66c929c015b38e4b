#pragma once

#include <functional>
#include <span>
#include <vector>

namespace esscirc {

struct NelderMeadResult {
    std::vector<double> x;
    double fmin = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Derivative-free simplex minimizer (reflection 1, expansion 2,
/// contraction 0.5, shrink 0.5). Converges when the spread of function
/// values over the simplex drops below ftol.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::span<const double> x0, double initial_step, double ftol,
                             int max_iter);

}  // namespace esscirc
