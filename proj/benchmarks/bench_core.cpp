// Microbenchmarks for the hot paths: power evaluation, placement
// optimization, curve fitting, decode simulation, and full planning runs.
#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "asrpower/curvefit.hpp"
#include "asrpower/energy.hpp"
#include "asrpower/model.hpp"
#include "asrpower/placement.hpp"
#include "asrpower/planner.hpp"
#include "asrpower/workload.hpp"

namespace {

using namespace asrpower;

ComponentSpec make_component(std::string name, std::uint64_t dense,
                             double ops_factor = 1.0) {
  ComponentSpec spec;
  spec.name = std::move(name);
  spec.dense_params = dense;
  spec.ops_factor = ops_factor;
  return spec;
}

struct ReferenceScenario {
  std::vector<ComponentState> states;
  std::vector<double> hz;
  MemoryConfig memory;
  StreamingParams streaming;

  ReferenceScenario() {
    ModelSpec spec;
    spec.components = {make_component(kEncoder, 60'700'000, 5.3),
                       make_component(kPredictor, 8'500'000, 0.765),
                       make_component(kJoiner, 4'000'000)};
    spec.streaming.input_stride_ms = 40.0;
    spec.streaming.chunk_ms = 160.0;
    spec.streaming.token_rate_hz = 11.53;
    spec.streaming.joiner_beta = calibrate_joiner_beta(113.5, 25.0, 11.53);
    spec.memory.energy_calibration = 1.049;
    for (const auto& component : spec.components) {
      states.push_back(dense_state(component));
    }
    hz = component_frequencies(spec.components, invocation_profile(spec.streaming));
    memory = spec.memory;
    streaming = spec.streaming;
  }
};

const ReferenceScenario& scenario() {
  static ReferenceScenario instance;
  return instance;
}

void BM_total_power(benchmark::State& state) {
  const auto& s = scenario();
  const Placement placement = all_offchip(s.states);
  for (auto _ : state) {
    benchmark::DoNotOptimize(total_power(s.states, s.hz, placement, s.memory));
  }
}
BENCHMARK(BM_total_power);

void BM_allocate_local_fractional(benchmark::State& state) {
  const auto& s = scenario();
  for (auto _ : state) {
    benchmark::DoNotOptimize(allocate_local(s.states, s.hz,
                                            s.memory.local_weight_capacity_bytes,
                                            PlacementMode::kFractional));
  }
}
BENCHMARK(BM_allocate_local_fractional);

// Exact 0/1 knapsack over n components via meet in the middle.
void BM_allocate_local_whole(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::uint64_t> bytes(100'000, 2'000'000);
  std::uniform_int_distribution<int> freq(1, 200);
  std::vector<ComponentState> states;
  std::vector<double> hz;
  std::uint64_t total = 0;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t b = bytes(rng);
    states.push_back(dense_state(make_component("c" + std::to_string(i), b)));
    hz.push_back(freq(rng));
    total += b;
  }
  const double capacity = static_cast<double>(total) / 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        allocate_local(states, hz, capacity, PlacementMode::kWholeComponent));
  }
}
BENCHMARK(BM_allocate_local_whole)->Arg(10)->Arg(20)->Arg(28);

void BM_fit_exponential(benchmark::State& state) {
  std::vector<SizeWerPoint> points;
  for (double size : {5.0, 10.0, 20.0, 30.0, 40.0, 50.0, 60.0}) {
    points.push_back({size, std::exp(-0.08 * size + 2.5) + 2.1});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_exponential(points));
  }
}
BENCHMARK(BM_fit_exponential);

void BM_simulate_decode(benchmark::State& state) {
  const auto& s = scenario();
  UtteranceSpec spec;
  spec.duration_s = static_cast<double>(state.range(0));
  spec.token_rate_hz = 11.53;
  spec.process = "poisson";
  spec.seed = 5;
  const UtteranceProfile utterance = make_utterance(spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_decode(s.streaming, utterance, 12));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(spec.duration_s));
}
BENCHMARK(BM_simulate_decode)->Arg(160)->Arg(1600);

void BM_plan_compression(benchmark::State& state) {
  const auto& s = scenario();
  CurveSet curves;
  auto curve = [](double a, double b, double c) {
    AccuracyCurve out;
    out.a = a;
    out.b = b;
    out.c = c;
    return out;
  };
  curves[kEncoder].by_dataset["dev"] = curve(-0.05, 2.119, 2.0);
  curves[kPredictor].by_dataset["dev"] = curve(-0.02, 0.17, 3.0);
  curves[kJoiner].by_dataset["dev"] = curve(-0.5, -0.303, 3.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(plan_compression(s.states, s.hz, curves, 60.0, 0.4,
                                              s.memory, PlacementMode::kFractional));
  }
}
BENCHMARK(BM_plan_compression);

}  // namespace

BENCHMARK_MAIN();
