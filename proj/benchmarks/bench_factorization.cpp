#include <benchmark/benchmark.h>

#include "latred/gso.hpp"
#include "latred/mimo.hpp"
#include "latred/parallel.hpp"
#include "latred/rng.hpp"

using namespace latred;

static void BM_Gso(benchmark::State& state) {
    Rng rng(0xFA);
    const ComplexMatrix b = sample_basis(ChannelModel{static_cast<std::size_t>(state.range(0))}, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gso(b));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Gso)->RangeMultiplier(2)->Range(4, 64)->Complexity();

static void BM_SortedGso(benchmark::State& state) {
    Rng rng(0xFB);
    const ComplexMatrix b = sample_basis(ChannelModel{static_cast<std::size_t>(state.range(0))}, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sorted_gso(b));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SortedGso)->RangeMultiplier(2)->Range(4, 64)->Complexity();

// the n^3/3 vs 2n^3 comparison: Cholesky of a precomputed Gram matrix
static void BM_SortedCholesky(benchmark::State& state) {
    Rng rng(0xFC);
    const ComplexMatrix b = sample_basis(ChannelModel{static_cast<std::size_t>(state.range(0))}, rng);
    const ComplexMatrix a = gram(b);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sorted_cholesky(a));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SortedCholesky)->RangeMultiplier(2)->Range(4, 64)->Complexity();

static void BM_Gram(benchmark::State& state) {
    Rng rng(0xFD);
    const ComplexMatrix b = sample_basis(ChannelModel{static_cast<std::size_t>(state.range(0))}, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gram(b));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Gram)->RangeMultiplier(2)->Range(4, 64)->Complexity();
