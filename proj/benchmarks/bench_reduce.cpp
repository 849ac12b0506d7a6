#include <benchmark/benchmark.h>

#include "capdigits/progressions.hpp"
#include "capdigits/rational_matrix.hpp"
#include "capdigits/reducibility.hpp"

using namespace capdigits;

static const DigitSet kD23{0, 1, 3, 4, 8, 9, 10, 12, 17};

static void BM_Enumerate(benchmark::State& state) {
  const DigitSetPair pair = DigitSetPair::all_fixed(Prime(23), kD23);
  const auto eq = make_line_equation(Prime(23), 21);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_progressions(pair, eq));
}
BENCHMARK(BM_Enumerate);

static void BM_DigitReduce(benchmark::State& state) {
  const DigitSetPair pair(Prime(41), {1, 2, 4, 5, 6, 9, 15, 16, 27, 32, 33, 35}, {1, 2, 4, 5, 6, 9, 15, 27, 32, 33});
  for (auto _ : state) benchmark::DoNotOptimize(digit_reducible(pair));
}
BENCHMARK(BM_DigitReduce)->Unit(benchmark::kMicrosecond);

static void BM_Echelon(benchmark::State& state) {
  const auto system = build_constraint_system(
      enumerate_progressions(DigitSetPair::all_fixed(Prime(23), kD23), make_line_equation(Prime(23), 21)));
  const RationalMatrix a(system.matrix);
  for (auto _ : state) benchmark::DoNotOptimize(reduced_row_echelon(a));
}
BENCHMARK(BM_Echelon)->Unit(benchmark::kMicrosecond);

static void BM_MatrixReduce(benchmark::State& state) {
  const DigitSetPair pair = DigitSetPair::all_fixed(Prime(23), kD23);
  for (auto _ : state) benchmark::DoNotOptimize(matrix_reducible(pair));
}
BENCHMARK(BM_MatrixReduce)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
