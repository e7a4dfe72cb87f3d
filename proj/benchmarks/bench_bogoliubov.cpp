#include <benchmark/benchmark.h>

#include "hkbec/bogoliubov.hpp"

namespace bg = hkbec::bogoliubov;
using hkbec::geometry::ConvexDomain;

static void BM_EnergyDensityExcess(benchmark::State& state) {
  const auto d = ConvexDomain::cube(static_cast<double>(state.range(0)));
  const bg::BogoliubovParams p{0.5, 1.0, std::nullopt};
  for (auto _ : state) benchmark::DoNotOptimize(bg::ground_state_energy_density_excess(d, p));
}
BENCHMARK(BM_EnergyDensityExcess)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_DepletionZeroT(benchmark::State& state) {
  const auto d = ConvexDomain::cube(static_cast<double>(state.range(0)));
  const bg::BogoliubovParams p{0.5, 1.0, std::nullopt};
  for (auto _ : state) benchmark::DoNotOptimize(bg::depletion_zero_T(d, p));
}
BENCHMARK(BM_DepletionZeroT)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_DepletionFiniteT(benchmark::State& state) {
  const auto d = ConvexDomain::cube(4.0);
  const bg::BogoliubovParams p{0.5, 1.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(bg::depletion_finite_T(d, p));
}
BENCHMARK(BM_DepletionFiniteT)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
