#include <benchmark/benchmark.h>

#include "pichar/cyclotomic.hpp"

using namespace pichar;

static void BM_RootSumCanonicalize(benchmark::State& state) {
  u64 n = (u64)state.range(0);
  for (auto _ : state) {
    std::vector<std::pair<i64, Rat>> terms;
    for (i64 k = 0; k < (i64)n; k += 2) terms.push_back({k, Rat(k % 5 - 2)});
    benchmark::DoNotOptimize(Cyclotomic::from_root_sum(n, terms));
  }
}
BENCHMARK(BM_RootSumCanonicalize)->Arg(15)->Arg(60)->Arg(105);

static void BM_Multiply(benchmark::State& state) {
  Cyclotomic a = Cyclotomic::root_of_unity(15, 1) + Cyclotomic::root_of_unity(15, 7);
  Cyclotomic b = Cyclotomic::root_of_unity(15, 2) - Cyclotomic::from_int(3);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_Multiply);

static void BM_AccumulatorOrthogonality(benchmark::State& state) {
  u64 n = 15;
  std::vector<Cyclotomic> vals;
  for (i64 k = 0; k < (i64)n; ++k) vals.push_back(Cyclotomic::root_of_unity(n, k));
  for (auto _ : state) {
    CycAccumulator acc(n);
    for (auto& a : vals)
      for (auto& b : vals) acc.add_product_conj(a, b, 3);
    benchmark::DoNotOptimize(acc.value());
  }
}
BENCHMARK(BM_AccumulatorOrthogonality);

BENCHMARK_MAIN();
