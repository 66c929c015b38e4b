#include "esscirc/selection.hpp"

#include <cmath>

#include "doctest.h"
#include "esscirc/angles.hpp"
#include "esscirc/rng.hpp"

using namespace esscirc;

TEST_CASE("sample circular stats on a hand-made symmetric set") {
    // {+-a, +-b}: mean direction 0, skewness exactly 0
    const std::vector<double> data = {0.4, -0.4, 1.1, -1.1};
    const auto st = sample_circular_stats(data);
    CHECK(st.mean_direction == doctest::Approx(0.0));
    CHECK(st.skewness == doctest::Approx(0.0));
    CHECK(st.mean_resultant_length ==
          doctest::Approx(0.5 * (std::cos(0.4) + std::cos(1.1))).epsilon(1e-14));
    CHECK_THROWS_AS(sample_circular_stats(std::vector<double>{0.1}), std::invalid_argument);
    // degenerate: all angles equal
    CHECK_THROWS_AS(sample_circular_stats(std::vector<double>{0.2, 0.2, 0.2}),
                    std::domain_error);
}

TEST_CASE("symmetry test on exactly symmetric data") {
    std::vector<double> data;
    RandomStream rng(9);
    VonMises vm(2.0);
    for (int i = 0; i < 60; ++i) {
        const double d = vm.sample(rng);
        data.push_back(d);
        data.push_back(-d);
    }
    const auto res = symmetry_test(data);
    CHECK(res.statistic == doctest::Approx(0.0));
    CHECK(res.p_value == doctest::Approx(1.0));
    CHECK_THROWS_AS(symmetry_test(std::vector<double>(5, 0.1)), std::invalid_argument);
}

TEST_CASE("symmetry test detects strong skew") {
    EssModel model(0.0, WrappedCauchy(0.8), 0.9, 3);
    RandomStream rng(10);
    const auto data = model.sample(400, rng);
    const auto res = symmetry_test(data);
    CHECK(res.p_value < 0.01);
    // negative sample skewness for positive lambda (sign convention)
    CHECK(res.stats.skewness < 0.0);
}

TEST_CASE("symmetry test holds its level under the null") {
    // rejection rate at alpha = 0.05 stays within [0.03, 0.07]
    int rejections = 0;
    const int reps = 2000;
    for (int r = 0; r < reps; ++r) {
        auto rng = RandomStream::derive(4242, {static_cast<std::uint64_t>(r)});
        VonMises vm(2.0);
        std::vector<double> data(100);
        for (double& d : data) d = vm.sample(rng);
        const auto res = symmetry_test(data);
        if (res.p_value < 0.05) ++rejections;
    }
    const double rate = static_cast<double>(rejections) / reps;
    CHECK(rate > 0.03);
    CHECK(rate < 0.07);
}

TEST_CASE("order selection is deterministic and consistent with AIC") {
    EssModel model(0.0, WrappedCauchy(0.8), 0.8, 3);
    RandomStream rng(77);
    const auto data = model.sample(250, rng);
    const std::vector<int> grid = {0, 1, 2, 3, 4};

    const auto sel1 = select_order(data, BaseFamily::wrapped_cauchy, grid);
    const auto sel2 = select_order(data, BaseFamily::wrapped_cauchy, grid);
    CHECK(sel1.mll_order == sel2.mll_order);
    CHECK(sel1.tic_order == sel2.tic_order);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(sel1.fits[i].loglik == doctest::Approx(sel2.fits[i].loglik).epsilon(1e-14));
        CHECK(sel1.failures[i].empty());
    }

    // the MLL selector coincides with argmin AIC
    int aic_best = grid[0];
    double best = sel1.fits[0].aic;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (sel1.fits[i].aic < best) {
            best = sel1.fits[i].aic;
            aic_best = grid[i];
        }
    }
    CHECK(sel1.mll_order == aic_best);

    // selection is invariant under rotation of the data
    std::vector<double> rotated(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) rotated[i] = wrap_pi(data[i] + 0.9);
    const auto selr = select_order(rotated, BaseFamily::wrapped_cauchy, grid);
    CHECK(selr.mll_order == sel1.mll_order);
    CHECK(selr.tic_order == sel1.tic_order);

    CHECK_THROWS_AS(select_order(data, BaseFamily::wrapped_cauchy, std::vector<int>{}),
                    std::invalid_argument);
}
