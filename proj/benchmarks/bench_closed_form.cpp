#include <benchmark/benchmark.h>

#include "spreadnet/closed_form.hpp"
#include "spreadnet/optimizer.hpp"

using namespace spreadnet;

namespace {

const NetworkConfig kCfg{};

void BM_SuccessBroadcast(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(p_suc_broadcast(kCfg, 0.064));
  }
}
BENCHMARK(BM_SuccessBroadcast);

void BM_CoverageCurve45(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(coverage_curve(kCfg, 0.064, Mode::Broadcast, 45));
  }
}
BENCHMARK(BM_CoverageCurve45);

void BM_Redundancy(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(redundancy(kCfg, 0.064, 33));
  }
}
BENCHMARK(BM_Redundancy);

void BM_SolveConstant(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_constant(kCfg));
  }
}
BENCHMARK(BM_SolveConstant);

void BM_SolveDynamic(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_dynamic(kCfg));
  }
}
BENCHMARK(BM_SolveDynamic);

void BM_GridOracle(benchmark::State& state) {
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(grid_oracle(kCfg, grid, 1, kCfg.slot_cap));
  }
}
BENCHMARK(BM_GridOracle)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
