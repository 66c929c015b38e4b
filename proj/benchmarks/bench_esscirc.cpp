#include <benchmark/benchmark.h>

#include "esscirc/esscirc.hpp"

using namespace esscirc;

namespace {

const EssModel& wc_model() {
    static const EssModel model(0.3, WrappedCauchy(0.8), 0.8, 3);
    return model;
}

const EssModel& vm_model() {
    static const EssModel model(0.3, VonMises(2.0), -0.8, 2);
    return model;
}

void BM_DensityWC(benchmark::State& state) {
    double t = -3.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(wc_model().density(t));
        t += 1e-4;
    }
}
BENCHMARK(BM_DensityWC);

void BM_LogDensityVM(benchmark::State& state) {
    double t = -3.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(vm_model().log_density(t));
        t += 1e-4;
    }
}
BENCHMARK(BM_LogDensityVM);

void BM_BesselRatio(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    const double kappa = static_cast<double>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(bessel_i_ratio(p, kappa));
}
BENCHMARK(BM_BesselRatio)->Args({1, 2})->Args({8, 2})->Args({8, 200})->Args({31, 500});

void BM_SkewingCdf(benchmark::State& state) {
    const SkewingPolynomial g(static_cast<int>(state.range(0)));
    double x = -1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(g.cdf(x));
        x += 1e-6;
        if (x > 1.0) x = -1.0;
    }
}
BENCHMARK(BM_SkewingCdf)->Arg(0)->Arg(3)->Arg(10);

void BM_Sample(benchmark::State& state) {
    RandomStream rng(7);
    const EssModel& model = state.range(0) == 0 ? wc_model() : vm_model();
    for (auto _ : state) benchmark::DoNotOptimize(model.sample(rng));
}
BENCHMARK(BM_Sample)->Arg(0)->Arg(1);

void BM_CenteredMoments(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(centered_moments(wc_model(), 2));
}
BENCHMARK(BM_CenteredMoments);

void BM_LogLikelihood(benchmark::State& state) {
    RandomStream rng(11);
    const auto data = wc_model().sample(500, rng);
    for (auto _ : state) benchmark::DoNotOptimize(log_likelihood(wc_model(), data));
}
BENCHMARK(BM_LogLikelihood);

void BM_FitMle(benchmark::State& state) {
    RandomStream rng(13);
    const auto data = wc_model().sample(500, rng);
    FitConfig cfg;
    cfg.family = BaseFamily::wrapped_cauchy;
    cfg.order = 3;
    cfg.compute_information = state.range(0) != 0;
    for (auto _ : state) benchmark::DoNotOptimize(fit_mle(data, cfg));
}
BENCHMARK(BM_FitMle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->MinTime(2.0);

void BM_SymmetryTest(benchmark::State& state) {
    RandomStream rng(17);
    const auto data = wc_model().sample(200, rng);
    for (auto _ : state) benchmark::DoNotOptimize(symmetry_test(data));
}
BENCHMARK(BM_SymmetryTest);

}  // namespace

BENCHMARK_MAIN();
