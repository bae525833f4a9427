#include <benchmark/benchmark.h>

#include "branchcover/rotation_group.hpp"
#include "branchcover/spaceform.hpp"

using namespace branchcover;

static void BM_SpaceFormBuild(benchmark::State& state) {
  const spaceform::Icosahedral spec{state.range(0)};
  for (auto _ : state) benchmark::DoNotOptimize(spaceform::build(spec));
}
BENCHMARK(BM_SpaceFormBuild)->Arg(1)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_SpaceFormVerify(benchmark::State& state) {
  const auto cert = spaceform::build(spaceform::Tetrahedral{state.range(0), 2});
  for (auto _ : state) benchmark::DoNotOptimize(spaceform::verify(cert));
}
BENCHMARK(BM_SpaceFormVerify)->Arg(1)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_DerivedSeries(benchmark::State& state) {
  const auto cert = spaceform::build(spaceform::Icosahedral{7});
  for (auto _ : state) benchmark::DoNotOptimize(groups::derived_series(cert.pi_hat));
}
BENCHMARK(BM_DerivedSeries)->Unit(benchmark::kMillisecond);
