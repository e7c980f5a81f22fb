#include <benchmark/benchmark.h>

#include "stoheat/bounds.hpp"
#include "stoheat/montecarlo.hpp"
#include "stoheat/quadrature.hpp"
#include "stoheat/rng.hpp"
#include "stoheat/scheme.hpp"
#include "stoheat/spectral.hpp"
#include "stoheat/weak_error.hpp"

using namespace stoheat;

namespace {

void BM_PerModeWeakError(benchmark::State& state) {
    const GridSpec grid(1.0, 1024);
    double lam = kModeRate;
    for (auto _ : state) {
        benchmark::DoNotOptimize(per_mode_weak_error(lam, grid));
        lam += 1e-12;  // defeat value caching without changing the regime
    }
}
BENCHMARK(BM_PerModeWeakError);

void BM_WeakErrorField(benchmark::State& state) {
    const GridSpec grid(1.0, static_cast<std::uint32_t>(state.range(0)));
    const SobolevOrder p(0.4);
    for (auto _ : state) benchmark::DoNotOptimize(weak_error(p, grid).value);
}
BENCHMARK(BM_WeakErrorField)->Arg(64)->Arg(1024);

void BM_Decompose(benchmark::State& state) {
    const GridSpec grid(1.0, static_cast<std::uint32_t>(state.range(0)));
    const SobolevOrder p(0.0);
    for (auto _ : state) benchmark::DoNotOptimize(decompose(p, grid).direct);
}
BENCHMARK(BM_Decompose)->Unit(benchmark::kMillisecond)->Arg(16)->Arg(64);

void BM_StrongErrorField(benchmark::State& state) {
    const GridSpec grid(1.0, 256);
    for (auto _ : state) benchmark::DoNotOptimize(strong_error_field(grid).value);
}
BENCHMARK(BM_StrongErrorField);

void BM_SeriesAd(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(series_ad(0.01, 1.0).value);
}
BENCHMARK(BM_SeriesAd);

void BM_StepSum(benchmark::State& state) {
    const GridSpec grid(1.0, 256);
    const SobolevOrder p(0.0);
    for (auto _ : state) benchmark::DoNotOptimize(lem_at_sum(1, p, grid));
}
BENCHMARK(BM_StepSum)->Unit(benchmark::kMillisecond);

void BM_GaussLegendreBuild(benchmark::State& state) {
    const auto order = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state) {
        GaussLegendre g(order);
        benchmark::DoNotOptimize(g.nodes().data());
    }
}
BENCHMARK(BM_GaussLegendreBuild)->Arg(16)->Arg(64);

void BM_NormalAt(benchmark::State& state) {
    std::uint32_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(normal_at(12345, 1, 0, i, 0));
        ++i;
    }
}
BENCHMARK(BM_NormalAt);

void BM_McModeSecondMoment(benchmark::State& state) {
    const GridSpec grid(1.0, 16);
    McOptions opt;
    opt.samples = 1000;
    opt.workers = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(mc_mode_second_moment(1, grid, opt).mean);
}
BENCHMARK(BM_McModeSecondMoment)->Unit(benchmark::kMillisecond)->Arg(1)->Arg(4);

} // namespace

BENCHMARK_MAIN();
