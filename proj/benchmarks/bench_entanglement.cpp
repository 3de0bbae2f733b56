#include <benchmark/benchmark.h>

#include <densecap/entanglement.hpp>

using namespace densecap;

static void BM_ConvexRoofWerner(benchmark::State& state) {
    const auto s = states::werner(static_cast<double>(state.range(0)) / 10.0);
    ConvexRoofOptions options;
    options.restarts = 8;
    options.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(convex_roof(s, options).value);
}
BENCHMARK(BM_ConvexRoofWerner)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_ConcurrenceOracle(benchmark::State& state) {
    const auto s = states::werner(0.8);
    for (auto _ : state) benchmark::DoNotOptimize(concurrence_oracle(s));
}
BENCHMARK(BM_ConcurrenceOracle);
