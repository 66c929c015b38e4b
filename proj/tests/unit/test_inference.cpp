#include "esscirc/inference.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "esscirc/angles.hpp"
#include "esscirc/circular_stats.hpp"
#include "esscirc/rng.hpp"

using namespace esscirc;

namespace {

std::vector<double> wc_sample(double mu, double rho, double lambda, int m, int n,
                              std::uint64_t seed) {
    EssModel model(mu, WrappedCauchy(rho), lambda, m);
    RandomStream rng(seed);
    return model.sample(n, rng);
}

}  // namespace

TEST_CASE("log likelihood basics") {
    const auto data = wc_sample(0.3, 0.8, 0.5, 2, 50, 11);
    // lambda = 0: equals the sum of base log densities
    EssModel flat(0.3, WrappedCauchy(0.8), 0.0, 2);
    double base_sum = 0.0;
    WrappedCauchy wc(0.8);
    for (double t : data) base_sum += wc.log_density(wrap_pi(t - 0.3));
    CHECK(log_likelihood(flat, data) == doctest::Approx(base_sum).epsilon(1e-12));

    // single datum at the location: G_m(0) = 1/2 cancels the factor 2
    EssModel any(0.3, WrappedCauchy(0.8), 0.77, 3);
    const std::vector<double> one = {0.3};
    CHECK(log_likelihood(any, one) == doctest::Approx(std::log(1.4323944878)).epsilon(1e-9));

    // permutation invariance
    auto shuffled = data;
    std::mt19937_64 gen(5);
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    CHECK(log_likelihood(any, shuffled) == doctest::Approx(log_likelihood(any, data)).epsilon(1e-13));

    CHECK_THROWS_AS(log_likelihood(any, std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("fit requires enough data and sane config") {
    FitConfig cfg;
    CHECK_THROWS_AS(fit_mle(std::vector<double>{0.1, 0.2, 0.3}, cfg), std::invalid_argument);
    FitConfig bad = cfg;
    bad.delta_lambda = 1.0;
    CHECK_THROWS_AS(fit_mle(std::vector<double>{0.1, 0.2, 0.3, 0.4}, bad), std::invalid_argument);
}

TEST_CASE("fit recovers a symmetric model with lambda near zero") {
    const auto data = wc_sample(0.5, 0.8, 0.0, 1, 2000, 21);
    FitConfig cfg;
    cfg.family = BaseFamily::wrapped_cauchy;
    cfg.order = 1;
    const FitReport rep = fit_mle(data, cfg);
    REQUIRE(rep.se_available);
    CHECK(std::abs(rep.lambda) < 3.0 * rep.se_robust[2]);
    CHECK(std::abs(wrap_pi(rep.mu - 0.5)) < 3.0 * rep.se_robust[0]);
    CHECK(std::abs(rep.concentration - 0.8) < 3.0 * rep.se_robust[1]);
    CHECK(rep.converged);
}

TEST_CASE("optimum beats the deterministic start design") {
    const auto data = wc_sample(-0.4, 0.8, 0.7, 2, 300, 33);
    FitConfig cfg;
    cfg.family = BaseFamily::wrapped_cauchy;
    cfg.order = 2;
    cfg.compute_information = false;
    const FitReport rep = fit_mle(data, cfg);
    const double md = circ_mean_direction(data);
    const double rbar = circ_mean_resultant(data);
    for (double moff : {0.0, kPi / 4, -kPi / 4}) {
        for (double l0 : {0.0, 0.5, -0.5}) {
            EssModel start(md + moff, WrappedCauchy(std::clamp(rbar, 0.01, 0.99)), l0, 2);
            CHECK(rep.loglik >= log_likelihood(start, data) - 1e-9);
        }
    }
}

TEST_CASE("information criteria identities") {
    const auto data = wc_sample(0.0, 0.8, 0.5, 2, 200, 44);
    FitConfig cfg;
    cfg.family = BaseFamily::wrapped_cauchy;
    cfg.order = 2;
    const FitReport rep = fit_mle(data, cfg);
    CHECK(rep.aic - (-2.0 * rep.loglik) == doctest::Approx(6.0).epsilon(1e-12));
    REQUIRE(rep.tic_available);
    CHECK(rep.tic == doctest::Approx(-2.0 * rep.loglik + 2.0 * rep.tic_penalty).epsilon(1e-12));
}

TEST_CASE("observed information is symmetric and sane") {
    const auto data = wc_sample(0.2, 0.8, 0.4, 1, 400, 55);
    FitConfig cfg;
    cfg.family = BaseFamily::wrapped_cauchy;
    cfg.order = 1;
    const FitReport rep = fit_mle(data, cfg);
    EssModel fitted(rep.mu, WrappedCauchy(rep.concentration), rep.lambda, 1);
    const auto info = observed_information(fitted, data);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(info.j_hat[i][j] == doctest::Approx(info.j_hat[j][i]).epsilon(1e-8));
            CHECK(info.i_hat[i][j] == doctest::Approx(info.i_hat[j][i]).epsilon(1e-8));
        }
    }
    CHECK_FALSE(info.singular);
    // at an interior MLE of a correctly specified model, J ~ I
    CHECK(info.j_hat[1][1] == doctest::Approx(info.i_hat[1][1]).epsilon(0.5));
}

TEST_CASE("von Mises scores degenerate at lambda = 0: singular flag") {
    // exactly symmetric data pins lambda-hat at 0, where the mu and lambda
    // scores are proportional observation by observation
    std::vector<double> data;
    RandomStream rng(66);
    VonMises vm(2.0);
    for (int i = 0; i < 150; ++i) {
        const double d = vm.sample(rng);
        data.push_back(d);
        data.push_back(-d);
    }
    EssModel at_zero(0.0, VonMises(2.0), 0.0, 1);
    const auto info = observed_information(at_zero, data);
    CHECK(info.singular);
    CHECK(info.cond_i > 1e10);

    FitConfig cfg;
    cfg.family = BaseFamily::von_mises;
    cfg.order = 1;
    const FitReport rep = fit_mle(data, cfg);
    CHECK(std::abs(rep.lambda) < 1e-4);
    CHECK(rep.info_singular);
    CHECK_FALSE(rep.tic_available);
}

TEST_CASE("boundary fits suppress standard errors but keep TIC") {
    // strong skew at small n lands on the boundary with high probability
    std::vector<double> data;
    for (int seed = 0; seed < 40; ++seed) {
        data = wc_sample(0.0, 0.8, 0.95, 0, 60, 700 + seed);
        FitConfig cfg;
        cfg.family = BaseFamily::wrapped_cauchy;
        cfg.order = 0;
        const FitReport rep = fit_mle(data, cfg);
        if (rep.boundary) {
            CHECK_FALSE(rep.se_available);
            CHECK(rep.se_note.find("boundary") != std::string::npos);
            return;
        }
    }
    FAIL("no boundary fit found in 40 seeds");
}

TEST_CASE("finite-difference scores agree with Richardson extrapolation") {
    const auto data = wc_sample(0.1, 0.75, 0.5, 2, 120, 88);
    EssModel model(0.05, WrappedCauchy(0.7), 0.4, 2);  // interior point
    const auto g = loglik_gradient_fd(model, data);

    // four-point Richardson with a larger base step
    const std::array<double, 3> eta = {0.05, 0.7, 0.4};
    for (int j = 0; j < 3; ++j) {
        const double h = 1e-4 * std::max(1.0, std::abs(eta[j]));
        auto ll_at = [&](double delta) {
            std::array<double, 3> e = eta;
            e[j] += delta;
            EssModel m(e[0], WrappedCauchy(e[1]), e[2], 2);
            return log_likelihood(m, data);
        };
        const double rich =
            (8.0 * (ll_at(h) - ll_at(-h)) - (ll_at(2 * h) - ll_at(-2 * h))) / (12.0 * h);
        CHECK(g[j] == doctest::Approx(rich).epsilon(1e-5));
    }
}

TEST_CASE("equivariance under rotation") {
    const auto data = wc_sample(0.0, 0.8, 0.6, 1, 400, 99);
    FitConfig cfg;
    cfg.family = BaseFamily::wrapped_cauchy;
    cfg.order = 1;
    cfg.compute_information = false;
    const FitReport base = fit_mle(data, cfg);

    const double delta = 1.1;
    std::vector<double> rotated(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) rotated[i] = wrap_pi(data[i] + delta);
    const FitReport rot = fit_mle(rotated, cfg);

    CHECK(std::abs(wrap_pi(rot.mu - base.mu - delta)) < 1e-6);
    CHECK(rot.concentration == doctest::Approx(base.concentration).epsilon(1e-6));
    CHECK(rot.lambda == doctest::Approx(base.lambda).epsilon(1e-6));
    CHECK(rot.loglik == doctest::Approx(base.loglik).epsilon(1e-9));
    CHECK(rot.aic == doctest::Approx(base.aic).epsilon(1e-7));
}

TEST_CASE("equivariance under reflection") {
    const auto data = wc_sample(0.3, 0.8, 0.6, 2, 400, 111);
    FitConfig cfg;
    cfg.family = BaseFamily::wrapped_cauchy;
    cfg.order = 2;
    cfg.compute_information = false;
    const FitReport base = fit_mle(data, cfg);

    std::vector<double> reflected(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) reflected[i] = wrap_pi(-data[i]);
    const FitReport ref = fit_mle(reflected, cfg);

    CHECK(std::abs(wrap_pi(ref.mu + base.mu)) < 1e-6);
    CHECK(ref.concentration == doctest::Approx(base.concentration).epsilon(1e-6));
    CHECK(ref.lambda == doctest::Approx(-base.lambda).epsilon(1e-6));
    CHECK(ref.loglik == doctest::Approx(base.loglik).epsilon(1e-9));
}

TEST_CASE("delta-lambda shrinks the feasible skewness") {
    const auto data = wc_sample(0.0, 0.8, 0.95, 0, 80, 123);
    FitConfig cfg;
    cfg.family = BaseFamily::wrapped_cauchy;
    cfg.order = 0;
    cfg.delta_lambda = 0.05;
    cfg.compute_information = false;
    const FitReport rep = fit_mle(data, cfg);
    CHECK(std::abs(rep.lambda) <= 0.95 + 1e-9);
}
