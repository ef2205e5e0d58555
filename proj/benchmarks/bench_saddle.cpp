#include <benchmark/benchmark.h>

#include "urnlab/urnlab.hpp"

using namespace urnlab;

static void BM_ContourCoefficient(benchmark::State& state) {
  const UrnSpec spec = validate_urn(state.range(0), state.range(1), 0, 1);
  const Integrand integrand(spec, Complex{static_cast<double>(state.range(2)) / 2.0, 0.0});
  const ContourSpec contour = standard_contour(spec, static_cast<std::size_t>(state.range(3)));
  for (auto _ : state) benchmark::DoNotOptimize(contour_coefficient(integrand, contour));
}
// x is passed doubled: 2 -> x = 1, 4 -> x = 2.
BENCHMARK(BM_ContourCoefficient)
    ->Args({1, 1, 2, 30})
    ->Args({1, 1, 4, 30})
    ->Args({3, 2, 2, 30})
    ->Args({3, 2, 4, 30})
    ->Args({1, 1, 2, 200})
    ->Unit(benchmark::kMillisecond);

static void BM_SaddlePoints(benchmark::State& state) {
  const UrnSpec spec = validate_urn(3, 2, 0, 1);
  const Integrand integrand(spec, Complex{1.5, 0.2});
  for (auto _ : state) benchmark::DoNotOptimize(find_saddle_points(integrand));
}
BENCHMARK(BM_SaddlePoints);
