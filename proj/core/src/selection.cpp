#include "esscirc/selection.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "esscirc/circular_stats.hpp"

namespace esscirc {

CircularSampleStats sample_circular_stats(std::span<const double> data) {
    if (data.size() < 2)
        throw std::invalid_argument("sample_circular_stats: need at least 2 observations");
    CircularSampleStats st;
    st.n = static_cast<int>(data.size());
    st.mean_direction = circ_mean_direction(data);
    st.mean_resultant_length = circ_mean_resultant(data);
    if (1.0 - st.mean_resultant_length < 1e-10)
        throw std::domain_error("sample_circular_stats: degenerate sample, R ~ 1");
    double b2 = 0.0;
    for (double t : data) b2 += std::sin(2.0 * (t - st.mean_direction));
    b2 /= static_cast<double>(data.size());
    st.skewness = b2 / std::pow(1.0 - st.mean_resultant_length, 1.5);
    return st;
}

SymmetryTestResult symmetry_test(std::span<const double> data) {
    if (data.size() < 10) throw std::invalid_argument("symmetry_test: need at least 10 observations");
    SymmetryTestResult res;
    res.stats = sample_circular_stats(data);
    const double n = static_cast<double>(data.size());
    const double md = res.stats.mean_direction;
    const double rbar = res.stats.mean_resultant_length;

    double b2 = 0.0, a2 = 0.0, a3 = 0.0, a4 = 0.0;
    for (double t : data) {
        const double c = t - md;
        b2 += std::sin(2.0 * c);
        a2 += std::cos(2.0 * c);
        a3 += std::cos(3.0 * c);
        a4 += std::cos(4.0 * c);
    }
    b2 /= n;
    a2 /= n;
    a3 /= n;
    a4 /= n;

    const double var = ((1.0 - a4) / 2.0 - 2.0 * a2 +
                        (2.0 * a2 / rbar) * (a3 + a2 * (1.0 - a2) / rbar)) /
                       n;
    if (!(var > 0.0) || !std::isfinite(var))
        throw std::domain_error("symmetry_test: degenerate variance estimate");

    res.statistic = b2 / std::sqrt(var);
    res.p_value = std::erfc(std::abs(res.statistic) / std::sqrt(2.0));
    return res;
}

OrderSelection select_order(std::span<const double> data, BaseFamily family,
                            std::span<const int> grid, FitConfig proto) {
    if (grid.empty()) throw std::invalid_argument("select_order: empty order grid");
    OrderSelection sel;
    sel.grid.assign(grid.begin(), grid.end());
    sel.fits.resize(grid.size());
    sel.failures.assign(grid.size(), std::string());

    proto.family = family;
    std::vector<std::thread> pool;
    pool.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        pool.emplace_back([&, i]() {
            FitConfig cfg = proto;
            cfg.order = sel.grid[i];
            try {
                sel.fits[i] = fit_mle(data, cfg);
            } catch (const std::exception& e) {
                sel.failures[i] = e.what();
            }
        });
    }
    for (auto& t : pool) t.join();

    double best_ll = -std::numeric_limits<double>::infinity();
    double best_tic = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!sel.failures[i].empty()) continue;
        if (sel.fits[i].loglik > best_ll) {
            best_ll = sel.fits[i].loglik;
            sel.mll_order = sel.grid[i];
        }
        if (sel.fits[i].tic_available && sel.fits[i].tic < best_tic) {
            best_tic = sel.fits[i].tic;
            sel.tic_order = sel.grid[i];
            sel.tic_selection_available = true;
        }
    }
    return sel;
}

}  // namespace esscirc
