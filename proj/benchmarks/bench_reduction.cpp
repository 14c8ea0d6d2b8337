#include <benchmark/benchmark.h>

#include <vector>

#include "latred/mimo.hpp"
#include "latred/parallel.hpp"
#include "latred/reduction.hpp"
#include "latred/rng.hpp"

using namespace latred;

namespace {

std::vector<ComplexMatrix> basis_pool(std::size_t n, std::size_t count) {
    std::vector<ComplexMatrix> pool;
    pool.reserve(count);
    Rng rng(0xBE);
    for (std::size_t i = 0; i < count; ++i) pool.push_back(sample_basis(ChannelModel{n}, rng));
    return pool;
}

}  // namespace

static void BM_LllReduce(benchmark::State& state) {
    const auto pool = basis_pool(static_cast<std::size_t>(state.range(0)), 32);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lll_reduce(pool[i++ % pool.size()], {}));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LllReduce)->RangeMultiplier(2)->Range(4, 32)->Complexity();

static void BM_EffectiveLll(benchmark::State& state) {
    const auto pool = basis_pool(static_cast<std::size_t>(state.range(0)), 32);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(effective_lll_reduce(pool[i++ % pool.size()], {}));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EffectiveLll)->RangeMultiplier(2)->Range(4, 32)->Complexity();

static void BM_LllDeep(benchmark::State& state) {
    const auto pool = basis_pool(static_cast<std::size_t>(state.range(0)), 32);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lll_deep_reduce(pool[i++ % pool.size()], {}));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LllDeep)->RangeMultiplier(2)->Range(4, 32)->Complexity();

static void BM_ParallelEffectiveLll(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const auto pool = basis_pool(n, 32);
    const SuperIterationBudget budget{default_parallel_effective_budget(n)};
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(parallel_effective_lll(pool[i++ % pool.size()], {}, budget));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ParallelEffectiveLll)->RangeMultiplier(2)->Range(4, 32)->Complexity();

static void BM_ParallelLllDeep(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const auto pool = basis_pool(n, 32);
    const SuperIterationBudget budget{default_parallel_deep_budget(n)};
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(parallel_lll_deep(pool[i++ % pool.size()], {}, budget));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ParallelLllDeep)->RangeMultiplier(2)->Range(4, 32)->Complexity();

static void BM_HybridLllDeep(benchmark::State& state) {
    const auto pool = basis_pool(static_cast<std::size_t>(state.range(0)), 32);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hybrid_lll_deep(pool[i++ % pool.size()], {}, 2));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HybridLllDeep)->RangeMultiplier(2)->Range(4, 32)->Complexity();
