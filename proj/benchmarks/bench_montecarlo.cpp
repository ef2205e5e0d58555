#include <benchmark/benchmark.h>

#include "urnlab/urnlab.hpp"

using namespace urnlab;

static void BM_Simulate(benchmark::State& state) {
  const UrnSpec spec = validate_urn(1, 1, 0, 1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto trials = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(simulate(spec, n, trials, 1, static_cast<unsigned>(state.range(2))));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0) * state.range(1));
}
BENCHMARK(BM_Simulate)
    ->Args({10, 100000, 1})
    ->Args({1000, 1000, 1})
    ->Args({1000, 1000, 4})
    ->Unit(benchmark::kMillisecond);
