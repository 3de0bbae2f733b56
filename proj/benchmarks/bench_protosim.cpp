#include <benchmark/benchmark.h>

#include <densecap/capacity.hpp>
#include <densecap/protosim.hpp>

using namespace densecap;

static void BM_QuantumDense(benchmark::State& state) {
    const auto s = states::werner(0.9);
    const auto e = dense_encoding(2);
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_quantum_dense(s, e, Decoder::bell(), 100000, 1, threads));
    state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_QuantumDense)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_ClassicalDense(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_classical_dense(ClassicalJointState::maximally_correlated(), true, 100000, 1));
    }
    state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_ClassicalDense)->Unit(benchmark::kMillisecond);
