#include <benchmark/benchmark.h>

#include "capdigits/search.hpp"

using namespace capdigits;

static void BM_NormalForm(benchmark::State& state) {
  const std::vector<int> d{2, 5, 7, 11, 13, 19, 20, 22, 4};
  for (auto _ : state) benchmark::DoNotOptimize(normalize_digit_set(d, Prime(23)));
}
BENCHMARK(BM_NormalForm)->Unit(benchmark::kMicrosecond);

static void BM_Candidates(benchmark::State& state) {
  const auto size = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(candidates(Prime(19), size, true));
}
BENCHMARK(BM_Candidates)->DenseRange(5, 8)->Unit(benchmark::kMillisecond);

static void BM_CheckPair(benchmark::State& state) {
  const DigitSetPair pair(Prime(23), {0, 1, 3, 4, 8, 9, 10, 12, 17}, {0, 1, 3, 4, 8, 10, 17});
  for (auto _ : state) benchmark::DoNotOptimize(check_pair(pair));
}
BENCHMARK(BM_CheckPair)->Unit(benchmark::kMillisecond);

static void BM_Sweep(benchmark::State& state) {
  const Prime p(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(max_admissible_size(p));
}
BENCHMARK(BM_Sweep)->Arg(11)->Arg(13)->Arg(17)->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
