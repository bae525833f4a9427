#include <benchmark/benchmark.h>

#include <random>

#include "branchcover/orbit.hpp"

using namespace branchcover::orbit;

static void BM_OrbitDistance(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto a = WeightedAction::make(3, 2);
  const auto p = random_point(rng), q = random_point(rng);
  for (auto _ : state) benchmark::DoNotOptimize(orbit_distance(a, p, q));
}
BENCHMARK(BM_OrbitDistance)->Unit(benchmark::kMicrosecond);

static void BM_SurfaceDistance(benchmark::State& state) {
  const auto f = profile(WeightedAction::make(3, 2));
  for (auto _ : state) benchmark::DoNotOptimize(surface_distance(f, 0.3, 0.0, 1.2, 2.5));
}
BENCHMARK(BM_SurfaceDistance)->Unit(benchmark::kMicrosecond);

static void BM_Compare(benchmark::State& state) {
  const auto a = profile(WeightedAction::make(1, 1)), b = branched_double(WeightedAction::make(5, 3));
  for (auto _ : state) benchmark::DoNotOptimize(compare(a, b, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Compare)->Arg(10000);
