#include <benchmark/benchmark.h>

#include "hkbec/heat_kernel.hpp"

namespace hk = hkbec::heat_kernel;
using hkbec::geometry::ConvexDomain;

static void BM_IntervalTrace(benchmark::State& state) {
  const auto rep = state.range(0) == 0 ? hk::Representation::spectral : hk::Representation::image;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hk::interval_trace(1.0, {hk::Boundary::neumann, 0.05, rep}));
  }
}
BENCHMARK(BM_IntervalTrace)->Arg(0)->Arg(1);

static void BM_BoxTraceDensityExcess(benchmark::State& state) {
  const auto d = ConvexDomain::cube(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hk::box_trace_density_excess(d, 1.0));
}
BENCHMARK(BM_BoxTraceDensityExcess)->Arg(4)->Arg(64);

static void BM_DiagKernel(benchmark::State& state) {
  const auto d = ConvexDomain::cube(2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hk::diag_kernel_box({0.3, 1.0, 1.7}, d, {hk::Boundary::neumann, 0.1}));
  }
}
BENCHMARK(BM_DiagKernel);

BENCHMARK_MAIN();
