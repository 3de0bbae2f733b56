#include <benchmark/benchmark.h>

#include <densecap/capacity.hpp>
#include <densecap/random.hpp>

using namespace densecap;

static void BM_OptimizePriorAntipodal(benchmark::State& state) {
    const BlochVector v{0.3, -0.4, 0.5};
    const auto rho = from_bloch(v);
    const auto pair = antipodal_pair(v);
    std::vector<DensityMatrix> signals;
    for (const auto& u : pair.unitaries()) signals.emplace_back(u * rho.matrix() * u.adjoint());
    for (auto _ : state) benchmark::DoNotOptimize(optimize_prior(signals));
}
BENCHMARK(BM_OptimizePriorAntipodal);

// Three non-symmetric signals: the prior moves away from uniform.
static void BM_OptimizePriorSkewed(benchmark::State& state) {
    std::vector<DensityMatrix> signals{from_bloch({0.9, 0.0, 0.0}), from_bloch({0.0, 0.5, 0.0}),
                                       from_bloch({-0.2, -0.2, 0.7})};
    PriorOptions options;
    options.record_history = false;
    for (auto _ : state) benchmark::DoNotOptimize(optimize_prior(signals, options));
}
BENCHMARK(BM_OptimizePriorSkewed);

static void BM_DenseCapacity(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    Engine rng(5);
    const auto s = random_bipartite({d, d}, rng);
    for (auto _ : state) benchmark::DoNotOptimize(dense_capacity(s, Direction::AtoB));
}
BENCHMARK(BM_DenseCapacity)->Arg(2)->Arg(3)->Arg(4);

static void BM_DenseCrossCheck(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    Engine rng(6);
    const auto s = random_bipartite({d, d}, rng);
    for (auto _ : state) benchmark::DoNotOptimize(dense_capacity_crosscheck(s, Direction::AtoB));
}
BENCHMARK(BM_DenseCrossCheck)->Arg(2)->Arg(3);
