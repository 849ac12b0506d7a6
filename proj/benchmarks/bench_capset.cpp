#include <benchmark/benchmark.h>

#include "capdigits/capset.hpp"

using namespace capdigits;

static void BM_BuildCap(benchmark::State& state) {
  const DigitSetPair pair(Prime(11), {0, 1, 3, 4, 5}, {0, 1, 3});
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_cap(pair, n));
}
BENCHMARK(BM_BuildCap)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_VerifyCap(benchmark::State& state) {
  const auto cap = build_cap(DigitSetPair(Prime(11), {0, 1, 3, 4, 5}, {0, 1, 3}), 5).points;
  for (auto _ : state) benchmark::DoNotOptimize(verify_cap(cap, static_cast<unsigned>(state.range(0))));
  state.counters["points"] = static_cast<double>(cap.size());
}
BENCHMARK(BM_VerifyCap)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_VerifyBose(benchmark::State& state) {
  const auto cap = bose_cap(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_cap(cap, 1));
}
BENCHMARK(BM_VerifyBose)->Arg(11)->Arg(23)->Unit(benchmark::kMillisecond);

static void BM_SizeEstimate(benchmark::State& state) {
  const DigitSetPair pair(Prime(23), {0, 1, 3, 4, 8, 9, 10, 12, 17}, {0, 1, 3, 4, 8, 10, 17});
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(size_estimate(pair, n));
}
BENCHMARK(BM_SizeEstimate)->Arg(90)->Arg(900)->Unit(benchmark::kMicrosecond);

static void BM_EgConstant(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(eg_constant(101));
}
BENCHMARK(BM_EgConstant)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
