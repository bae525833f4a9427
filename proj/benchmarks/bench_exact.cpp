#include <benchmark/benchmark.h>

#include "branchcover/exact_scalar.hpp"
#include "branchcover/linalg.hpp"

using branchcover::exact::ExactScalar;

static void BM_ScalarMultiply(benchmark::State& state) {
  const auto a = (ExactScalar::sqrt2() + ExactScalar::golden_ratio()).lifted_to(static_cast<int>(state.range(0)));
  const auto b = (ExactScalar::sqrt3() - ExactScalar::cos_2pi(1, 5)).lifted_to(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_ScalarMultiply)->Arg(120)->Arg(360)->Arg(840);

static void BM_ScalarInverse(benchmark::State& state) {
  const auto a = (ExactScalar::sqrt2() + ExactScalar::golden_ratio()).lifted_to(120);
  for (auto _ : state) benchmark::DoNotOptimize(a.inverse());
}
BENCHMARK(BM_ScalarInverse);

static void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  branchcover::exact::IntegerMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = static_cast<int>((r * 7 + c * 13 + r * c) % 11) - 5;
  for (auto _ : state) benchmark::DoNotOptimize(branchcover::exact::smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(8)->Arg(32)->Arg(64);
