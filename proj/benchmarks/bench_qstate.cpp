#include <benchmark/benchmark.h>

#include <densecap/qstate.hpp>
#include <densecap/random.hpp>

using namespace densecap;

static void BM_VonNeumannEntropy(benchmark::State& state) {
    Engine rng(1);
    const auto rho = random_density_matrix(static_cast<int>(state.range(0)), rng);
    for (auto _ : state) benchmark::DoNotOptimize(von_neumann_entropy(rho));
}
BENCHMARK(BM_VonNeumannEntropy)->Arg(2)->Arg(4)->Arg(9)->Arg(16)->Arg(36);

static void BM_PartialTrace(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    Engine rng(2);
    const auto rho = random_density_matrix(d * d, rng);
    for (auto _ : state) benchmark::DoNotOptimize(partial_trace(rho.matrix(), {d, d}, Subsystem::B));
}
BENCHMARK(BM_PartialTrace)->Arg(2)->Arg(3)->Arg(6);

static void BM_CorrelationDecompose(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    Engine rng(3);
    const auto s = random_bipartite({d, d}, rng);
    for (auto _ : state) benchmark::DoNotOptimize(correlation_decompose(s.joint(), s.dims()));
}
BENCHMARK(BM_CorrelationDecompose)->Arg(2)->Arg(3);
