#pragma once

#include <span>
#include <string>
#include <vector>

#include "esscirc/inference.hpp"

namespace esscirc {

struct CircularSampleStats {
    int n = 0;
    double mean_direction = 0.0;
    double mean_resultant_length = 0.0;
    double skewness = 0.0;  // b2 / (1 - R)^{3/2}
};

/// Sample mean direction, mean resultant length, and circular skewness.
/// Requires n >= 2; throws when R is within 1e-10 of 1 (degenerate).
CircularSampleStats sample_circular_stats(std::span<const double> data);

struct SymmetryTestResult {
    double statistic = 0.0;  // standardized second central sine moment
    double p_value = 1.0;    // two-sided normal tail
    CircularSampleStats stats;
};

/// Large-sample test of reflective symmetry about an unknown axis. The
/// second central sine moment b2 is standardized by its estimated asymptotic
/// variance
///   [(1 - a4)/2 - 2 a2 + (2 a2 / R)(a3 + a2 (1 - a2) / R)] / n,
/// built from the sample centered cosine moments a2, a3, a4 and R.
/// Requires n >= 10; throws when the variance estimate degenerates.
SymmetryTestResult symmetry_test(std::span<const double> data);

struct OrderSelection {
    std::vector<int> grid;
    std::vector<FitReport> fits;        // aligned with grid; default-initialized on failure
    std::vector<std::string> failures;  // empty string when the fit succeeded
    int mll_order = -1;                 // argmax log-likelihood == argmin AIC
    int tic_order = -1;
    bool tic_selection_available = false;
};

/// Fits every order in the grid (concurrently) and reports both selectors
/// plus the full per-order criterion table. Per-order failures are recorded
/// without aborting the rest of the grid.
OrderSelection select_order(std::span<const double> data, BaseFamily family,
                            std::span<const int> grid, FitConfig proto = {});

}  // namespace esscirc
