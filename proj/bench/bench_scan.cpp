// Serial reference vs OpenMP kernels on the scans the acceptance run uses.

#include <benchmark/benchmark.h>

#include "fcrystal/scan.hpp"

namespace {

using fcrystal::Family;

void BM_ScanSerial(benchmark::State& state) {
  const fcrystal::ScanSpec spec{Family::CircularDieudonne, static_cast<int>(state.range(0)), 1, 6};
  for (auto _ : state) benchmark::DoNotOptimize(fcrystal::scan_serial(spec));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(fcrystal::family_size(spec)));
}

void BM_ScanParallel(benchmark::State& state) {
  const fcrystal::ScanSpec spec{Family::CircularDieudonne, static_cast<int>(state.range(0)), 1, 6};
  for (auto _ : state) benchmark::DoNotOptimize(fcrystal::scan_parallel(spec));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(fcrystal::family_size(spec)));
}

void BM_VerifySerial(benchmark::State& state) {
  const fcrystal::ExhaustiveSpec spec{static_cast<int>(state.range(0)), 2, 5};
  for (auto _ : state) benchmark::DoNotOptimize(fcrystal::verify_exhaustive_serial(spec));
}

void BM_VerifyParallel(benchmark::State& state) {
  const fcrystal::ExhaustiveSpec spec{static_cast<int>(state.range(0)), 2, 5};
  for (auto _ : state) benchmark::DoNotOptimize(fcrystal::verify_exhaustive_parallel(spec));
}

}  // namespace

BENCHMARK(BM_ScanSerial)->DenseRange(5, 7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->DenseRange(5, 7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifySerial)->DenseRange(3, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyParallel)->DenseRange(3, 4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
