#include <benchmark/benchmark.h>

#include <random>

#include "capdigits/cone.hpp"
#include "capdigits/progressions.hpp"

using namespace capdigits;

namespace {

ConstraintSystem system_for(int p, DigitSet digits, DigitSet fixed, int b) {
  const DigitSetPair pair(Prime(p), std::move(digits), std::move(fixed));
  return build_constraint_system(enumerate_progressions(pair, make_line_equation(Prime(p), b)));
}

}  // namespace

static void BM_ConeP23(benchmark::State& state) {
  const auto system = system_for(23, {0, 1, 3, 4, 8, 9, 10, 12, 17}, {0, 1, 3, 4, 8, 10, 17}, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cone_trivial(system));
  state.counters["columns"] = static_cast<double>(system.matrix.cols());
}
BENCHMARK(BM_ConeP23)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_ConeRefutation(benchmark::State& state) {
  const auto system = system_for(13, {0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(cone_trivial(system));
}
BENCHMARK(BM_ConeRefutation)->Unit(benchmark::kMicrosecond);

static void BM_ConeRandom(benchmark::State& state) {
  std::mt19937 rng(5);
  const auto rows = static_cast<std::size_t>(state.range(0));
  std::vector<int> data(rows * 2 * rows);
  for (auto& v : data) v = static_cast<int>(rng() % 5) - 2;
  const IntMatrix a(rows, 2 * rows, std::move(data));
  for (auto _ : state) benchmark::DoNotOptimize(cone_trivial(a));
}
BENCHMARK(BM_ConeRandom)->RangeMultiplier(2)->Range(4, 32)->Unit(benchmark::kMicrosecond);

static void BM_VerifyCertificate(benchmark::State& state) {
  const auto system = system_for(23, {0, 1, 3, 4, 8, 9, 10, 12, 17}, {0, 1, 3, 4, 8, 10, 17}, 2);
  const auto cert = cone_trivial(system);
  for (auto _ : state) benchmark::DoNotOptimize(verify_certificate(system, cert));
}
BENCHMARK(BM_VerifyCertificate)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
