#include <benchmark/benchmark.h>

#include "hkbec/specfun.hpp"

namespace sf = hkbec::specfun;

static void BM_BesselIScaled(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(sf::bessel_i_scaled(1.0, x));
}
BENCHMARK(BM_BesselIScaled)->Arg(1)->Arg(10)->Arg(1000);

static void BM_BesselK(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sf::bessel_k(0.25, 1.0));
}
BENCHMARK(BM_BesselK);

static void BM_BoseG(benchmark::State& state) {
  const double z = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(sf::bose_g(1.5, z));
}
BENCHMARK(BM_BoseG)->Arg(50)->Arg(99)->Arg(100);

static void BM_KIntegralRep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sf::residual_k_integral_rep(0.5, 1.0));
}
BENCHMARK(BM_KIntegralRep);

BENCHMARK_MAIN();
