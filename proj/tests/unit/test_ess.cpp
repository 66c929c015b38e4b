#include "esscirc/ess.hpp"

#include <cmath>

#include "doctest.h"
#include "esscirc/angles.hpp"
#include "esscirc/moments.hpp"
#include "esscirc/rng.hpp"
#include "support/oracles.hpp"

using namespace esscirc;

TEST_CASE("lambda = 0 reduces to the shifted base") {
    for (int m : {0, 2, 5}) {
        EssModel model(0.7, WrappedCauchy(0.6), 0.0, m);
        WrappedCauchy base(0.6);
        for (double t : {-3.0, -1.0, 0.0, 0.7, 2.9}) {
            CHECK(model.density(t) ==
                  doctest::Approx(base.density(wrap_pi(t - 0.7))).epsilon(1e-14));
        }
    }
}

TEST_CASE("closed-form density value at the quarter circle") {
    EssModel model(0.0, WrappedCauchy(0.8), 1.0, 0);
    // 2 * WC(pi/2) * G_0(1) = 2 * 0.36 / (2 pi 1.64)
    CHECK(model.density(kPi / 2) == doctest::Approx(0.0698738).epsilon(1e-5));
    CHECK(model.density(kPi / 2) ==
          doctest::Approx(2.0 * 0.36 / (kTwoPi * 1.64)).epsilon(1e-12));
}

TEST_CASE("densities integrate to one over a model grid") {
    for (double lambda : {-1.0, -0.4, 0.3, 1.0}) {
        for (int m : {0, 1, 3, 5}) {
            EssModel vm(0.5, VonMises(8.0), lambda, m);
            EssModel wc(-1.2, WrappedCauchy(0.8), lambda, m);
            CHECK(oracles::periodic_trapezoid([&](double t) { return vm.density(t); }) ==
                  doctest::Approx(1.0).epsilon(1e-9));
            CHECK(oracles::periodic_trapezoid([&](double t) { return wc.density(t); }) ==
                  doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("strong skew moves mass across the mode") {
    // high concentration, strong positive skew: mass left of the center
    // exceeds mass right of it
    EssModel model(0.0, VonMises(8.0), 0.9, 5);
    const double left = oracles::gauss_legendre([&](double t) { return model.density(t); },
                                                -kPi, 0.0, 128);
    const double right = oracles::gauss_legendre([&](double t) { return model.density(t); },
                                                 0.0, kPi, 128);
    CHECK(left + right == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(left - right) > 0.1);
}

TEST_CASE("log density is consistent and never NaN") {
    EssModel model(0.3, VonMises(2.0), 1.0, 0);
    for (double t = -3.1; t < 3.2; t += 0.37) {
        const double ld = model.log_density(t);
        CHECK(std::isfinite(ld));
        if (model.density(t) > 1e-12) {
            CHECK(std::exp(ld) == doctest::Approx(model.density(t)).epsilon(1e-12));
        }
    }
    // density zero at theta - mu = -pi/2 when lambda = 1, m = 0: floored
    const double at_zero = model.log_density(0.3 - kPi / 2);
    CHECK(std::isfinite(at_zero));
    CHECK(at_zero < -600.0);
}

TEST_CASE("reflection duality") {
    // f(theta; mu, lambda) == f(2 mu - theta; mu, -lambda)
    EssModel plus(0.4, WrappedCauchy(0.7), 0.65, 3);
    EssModel minus(0.4, WrappedCauchy(0.7), -0.65, 3);
    for (double t = -3.0; t < 3.1; t += 0.29) {
        CHECK(plus.density(t) ==
              doctest::Approx(minus.density(wrap_pi(2 * 0.4 - t))).epsilon(1e-12));
    }
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS(EssModel(0.0, VonMises(1.0), 1.5, 0), std::invalid_argument);
    CHECK_THROWS_AS(EssModel(0.0, VonMises(1.0), 0.5, -2), std::invalid_argument);
    // mu is wrapped
    EssModel model(kPi, VonMises(1.0), 0.0, 0);
    CHECK(model.mu() == doctest::Approx(-kPi));
}

TEST_CASE("flip sampler with lambda = 0 reproduces the base") {
    EssModel model(0.0, WrappedCauchy(0.8), 0.0, 4);
    WrappedCauchy base(0.8);
    oracles::CircularCdf cdf([&](double t) { return base.density(t); });
    RandomStream rng(71);
    CHECK(oracles::ks_distance(model.sample(100000, rng), cdf) < 0.01);
}

TEST_CASE("flip sampler is exact for the two reference configurations") {
    struct Case {
        EssModel model;
    } cases[] = {
        {EssModel(0.0, WrappedCauchy(0.8), 0.8, 3)},
        {EssModel(0.0, VonMises(2.0), -0.8, 2)},
    };
    int seed = 1000;
    for (auto& c : cases) {
        oracles::CircularCdf cdf([&](double t) { return c.model.density(t); });
        RandomStream rng(seed++);
        CHECK(oracles::ks_distance(c.model.sample(100000, rng), cdf) < 0.01);
    }
}

TEST_CASE("flip sampler stays exact away from zero locations") {
    EssModel model(1.9, WrappedCauchy(0.75), -0.9, 2);
    oracles::CircularCdf cdf([&](double t) { return model.density(t); });
    RandomStream rng(5150);
    CHECK(oracles::ks_distance(model.sample(100000, rng), cdf) < 0.01);
}

TEST_CASE("sample first sine moment matches the closed-form beta_1") {
    EssModel model(0.0, VonMises(2.0), 0.6, 2);
    const auto [alpha1, beta1] = centered_moments(model, 1);
    RandomStream rng(99);
    const auto draws = model.sample(100000, rng);
    double s = 0.0;
    for (double d : draws) s += std::sin(d);
    s /= static_cast<double>(draws.size());
    // MC standard error of a bounded sine moment
    const double se = std::sqrt((0.5 * (1.0 - base_cosine_moment(model.base(), 2))) /
                                static_cast<double>(draws.size()));
    CHECK(std::abs(s - beta1) < 3.0 * se);
    (void)alpha1;
}

TEST_CASE("sampling over a parameter grid stays within the KS bound") {
    const double bound = 4.0 * std::sqrt(1.0 / 20000.0);
    int seed = 400;
    for (double lambda : {-1.0, 0.5}) {
        for (int m : {0, 4}) {
            EssModel vm(0.8, VonMises(5.0), lambda, m);
            oracles::CircularCdf cdf([&](double t) { return vm.density(t); });
            RandomStream rng(seed++);
            CHECK(oracles::ks_distance(vm.sample(20000, rng), cdf) < bound);
        }
    }
}
