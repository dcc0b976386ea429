#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "incbessel/batch.hpp"
#include "incbessel/engine.hpp"
#include "incbessel/legacy.hpp"

using namespace incbessel;

namespace {

std::vector<Parameters> points(std::size_t count) {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> xd(0.5, 20.0), yd(0.0, 20.0), nd(0.0, 4.0);
    std::vector<Parameters> v;
    for (std::size_t i = 0; i < count; ++i) v.push_back({xd(rng), yd(rng), nd(rng)});
    return v;
}

void BM_EvaluateSerial(benchmark::State& state) {
    const auto pts = points(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(batch::evaluate_serial(pts));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EvaluateParallel(benchmark::State& state) {
    const auto pts = points(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(batch::evaluate_parallel(pts));
    state.SetItemsProcessed(state.iterations() * state.range(0));
    state.counters["threads"] = batch::max_threads();
}

void BM_QuadratureSerial(benchmark::State& state) {
    const auto pts = points(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(batch::tail_integral_serial(pts));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_QuadratureParallel(benchmark::State& state) {
    const auto pts = points(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(batch::tail_integral_parallel(pts));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_RecursiveTrajectory(benchmark::State& state) {
    const Parameters p{4, 2, 3};
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_sequence(p, static_cast<int>(state.range(0))));
    state.SetComplexityN(state.range(0));
}

void BM_LegacyTrajectory(benchmark::State& state) {
    const Parameters p{4, 2, 3};
    for (auto _ : state) benchmark::DoNotOptimize(legacy::legacy_trajectory(p, static_cast<int>(state.range(0))));
    state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_EvaluateSerial)->Arg(64)->Arg(1024);
BENCHMARK(BM_EvaluateParallel)->Arg(64)->Arg(1024)->UseRealTime();
BENCHMARK(BM_QuadratureSerial)->Arg(64);
BENCHMARK(BM_QuadratureParallel)->Arg(64)->UseRealTime();
BENCHMARK(BM_RecursiveTrajectory)->RangeMultiplier(2)->Range(250, 4000)->Complexity(benchmark::oN);
BENCHMARK(BM_LegacyTrajectory)->RangeMultiplier(2)->Range(4, 32)->Complexity();

BENCHMARK_MAIN();
