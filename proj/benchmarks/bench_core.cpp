#include <benchmark/benchmark.h>

#include "tfp/cavity.hpp"
#include "tfp/oracle.hpp"

namespace {

void BM_CavityCoefficients(benchmark::State& state) {
  tfp::CavityParams params;
  params.p = 1.0;
  params.eA = 3.0;
  params.tau = 1.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tfp::cavity_coefficients(params));
  }
}
BENCHMARK(BM_CavityCoefficients);

void BM_FindRmax(benchmark::State& state) {
  const tfp::GridSpec grid = tfp::default_rmax_grid(10.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tfp::find_rmax(1.5, 10.0, grid));
  }
}
BENCHMARK(BM_FindRmax)->Unit(benchmark::kMillisecond);

void BM_OdeOracleInterface(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(tfp::ode_interface_oracle(1.0, 3.0));
  }
}
BENCHMARK(BM_OdeOracleInterface)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
