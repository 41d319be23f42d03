#include <benchmark/benchmark.h>

#include "spreadnet/success_integral.hpp"

using namespace spreadnet;

namespace {

const NetworkConfig kCfg{};

void BM_FieldIntegral(benchmark::State& state) {
  QuadratureSpec spec;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        oracle_detail::interference_field_integral(3.7e8, 120.0, 4.0, spec));
  }
}
BENCHMARK(BM_FieldIntegral);

void BM_LaplaceBroadcast(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(laplace_interference_broadcast(kCfg, 0.064, 3.7e8));
  }
}
BENCHMARK(BM_LaplaceBroadcast);

void BM_NumericSuccess(benchmark::State& state) {
  const Mode mode = state.range(0) == 0 ? Mode::Broadcast : Mode::Unicast;
  for (auto _ : state) {
    benchmark::DoNotOptimize(p_suc_numeric(kCfg, 0.064, mode));
  }
}
BENCHMARK(BM_NumericSuccess)->Arg(0)->Arg(1);

void BM_NumericSuccessCubic(benchmark::State& state) {
  NetworkConfig cubic = kCfg;
  cubic.alpha = 3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(p_suc_numeric(cubic, 0.064, Mode::Broadcast));
  }
}
BENCHMARK(BM_NumericSuccessCubic);

}  // namespace
