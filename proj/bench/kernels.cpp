// Serial reference vs OpenMP kernels on the same inputs.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <cmath>

#include "convexlab/corpus.hpp"
#include "convexlab/grid_transforms.hpp"
#include "convexlab/order_checks.hpp"
#include "convexlab/stability.hpp"

using namespace convexlab;

namespace {

GridFunction2D bench_grid(int n) {
  const LatticeSpec L(4.0, n);
  return GridFunction2D::sample(L, [](double x, double y) { return 0.5 * x * x + std::fabs(y) + 0.25 * std::fabs(x - y); });
}

void BM_LegendreSerial(benchmark::State& st) {
  const auto f = bench_grid(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(serial::legendre_grid(f));
}

void BM_LegendreParallel(benchmark::State& st) {
  const auto f = bench_grid(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(legendre_grid(f));
}

void BM_ADualSerial(benchmark::State& st) {
  const auto f = bench_grid(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(serial::a_grid(f));
}

void BM_ADualParallel(benchmark::State& st) {
  const auto f = bench_grid(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(a_grid(f));
}

GridFunction2D bench_segment(int n, int di, int dj) {
  return make_segment_indicator_grid(LatticeSpec(4.0, n), di, dj);
}

void BM_MeetSerial(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto a = bench_segment(n, n / 4, 0), b = bench_segment(n, 0, n / 4);
  for (auto _ : st) benchmark::DoNotOptimize(serial::hat_inf2_grid(a, b));
}

void BM_MeetParallel(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto a = bench_segment(n, n / 4, 0), b = bench_segment(n, 0, n / 4);
  for (auto _ : st) benchmark::DoNotOptimize(hat_inf2_grid(a, b));
}

// The pair checkers have no separate serial path; pin the team to one thread.
void BM_PairChecker(benchmark::State& st) {
  const AlmostOrderConstant k(1.5);
  const Corpus1D t = fuzz_transform({1, BaseTransform::Gauge, 1}, k, build_corpus(CorpusSpec{}));
  const int saved = omp_get_max_threads();
  omp_set_num_threads(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(check_almost_preserving(t, k));
  omp_set_num_threads(saved);
}

}  // namespace

BENCHMARK(BM_LegendreSerial)->Arg(33)->Arg(65)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LegendreParallel)->Arg(33)->Arg(65)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ADualSerial)->Arg(33)->Arg(65)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ADualParallel)->Arg(33)->Arg(65)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MeetSerial)->Arg(65)->Arg(129)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MeetParallel)->Arg(65)->Arg(129)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairChecker)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
