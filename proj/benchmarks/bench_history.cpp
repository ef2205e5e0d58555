#include <benchmark/benchmark.h>

#include "urnlab/urnlab.hpp"

using namespace urnlab;

static void BM_HistoryRow(benchmark::State& state) {
  const UrnSpec spec = validate_urn(state.range(0), state.range(1), 0, 1);
  const auto n = static_cast<std::size_t>(state.range(2));
  for (auto _ : state) benchmark::DoNotOptimize(history_row(spec, n));
  state.SetComplexityN(state.range(2));
}
BENCHMARK(BM_HistoryRow)
    ->Args({1, 1, 100})
    ->Args({1, 1, 400})
    ->Args({1, 1, 900})
    ->Args({3, 2, 400})
    ->Unit(benchmark::kMillisecond);

static void BM_LogDistribution(benchmark::State& state) {
  const UrnSpec spec = validate_urn(1, 1, 0, 1);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(log_distribution(spec, n));
}
BENCHMARK(BM_LogDistribution)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_MomentRecurrence(benchmark::State& state) {
  const UrnSpec spec = validate_urn(1, 1, 0, 1);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(moment_recurrence(spec, n));
}
BENCHMARK(BM_MomentRecurrence)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
