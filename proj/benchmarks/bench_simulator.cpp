#include <benchmark/benchmark.h>

#include "spreadnet/simulator.hpp"

using namespace spreadnet;

namespace {

const NetworkConfig kCfg{};

void BM_PlaceNodes(benchmark::State& state) {
  std::uint32_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(place_nodes(kCfg, 1, {}, trial++));
  }
}
BENCHMARK(BM_PlaceNodes);

void BM_SlotBroadcast(benchmark::State& state) {
  SimWorld w = place_nodes(kCfg, 1, {}, 0);
  for (auto _ : state) {
    step_mobility(w, MobilityModel::RandomDirection);
    benchmark::DoNotOptimize(run_slot(w, kCfg, 0.064, Mode::Broadcast));
  }
}
BENCHMARK(BM_SlotBroadcast);

void BM_SlotUnicast(benchmark::State& state) {
  SimWorld w = place_nodes(kCfg, 1, {}, 0);
  for (auto _ : state) {
    step_mobility(w, MobilityModel::RandomDirection);
    benchmark::DoNotOptimize(run_slot(w, kCfg, 0.064, Mode::Unicast));
  }
}
BENCHMARK(BM_SlotUnicast);

void BM_SlotStructuralUplink(benchmark::State& state) {
  SimOptions opts;
  opts.uplink = UplinkModel::Structural;
  SimWorld w = place_nodes(kCfg, 1, opts, 0);
  for (auto _ : state) {
    step_mobility(w, MobilityModel::RandomDirection);
    benchmark::DoNotOptimize(run_slot(w, kCfg, 0.064, Mode::Broadcast));
  }
}
BENCHMARK(BM_SlotStructuralUplink);

void BM_Trial42Slots(benchmark::State& state) {
  std::uint32_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_trial(kCfg, {0.064}, Mode::Broadcast, {}, 42, 1, trial++));
  }
}
BENCHMARK(BM_Trial42Slots);

}  // namespace
