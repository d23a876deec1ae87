// Serial reference against the OpenMP kernel for the three parallel sweeps.

#include "dslab/gamma_identities.hpp"
#include "dslab/integral_verify.hpp"
#include "dslab/montecarlo.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace dslab;

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void BM_GammaSweep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(identity_sweep_summary(10, 10, 30, exec_of(state)));
}
BENCHMARK(BM_GammaSweep)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ConvolutionSweep(benchmark::State& state) {
  const auto grid = default_convolution_grid();
  for (auto _ : state) benchmark::DoNotOptimize(sweep(grid, QuadratureConfig{}, exec_of(state)));
}
BENCHMARK(BM_ConvolutionSweep)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SimulateT(benchmark::State& state) {
  SimConfig cfg;
  cfg.samples = 200000;
  cfg.horizon = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_T(cfg, 1, exec_of(state)));
}
BENCHMARK(BM_SimulateT)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
