#include <benchmark/benchmark.h>

#include "branchcover/cover.hpp"
#include "branchcover/presentation.hpp"

using namespace branchcover;

static void BM_ToddCoxeterTorus(benchmark::State& state) {
  const auto p = pres::orbifold_quotient(
      pres::wirtinger(knot::braid_closure(knot::torus_knot(3, static_cast<int>(state.range(0))))));
  for (auto _ : state) benchmark::DoNotOptimize(pres::todd_coxeter(p));
}
BENCHMARK(BM_ToddCoxeterTorus)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_ToddCoxeterCapped(benchmark::State& state) {
  const auto p = pres::orbifold_quotient(pres::wirtinger(cover::diagram_from_input("montesinos", "0; 1/3 1/3 1/3")));
  const auto cap = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pres::todd_coxeter(p, cap));
}
BENCHMARK(BM_ToddCoxeterCapped)->Arg(20000)->Arg(200000)->Unit(benchmark::kMillisecond);

static void BM_Corpus(benchmark::State& state) {
  const auto rows = cover::load_corpus(std::string(BRANCHCOVER_SOURCE_DIR) + "/data/corpus.tsv");
  const auto workers = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cover::run_corpus(rows, {}, workers));
}
BENCHMARK(BM_Corpus)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
