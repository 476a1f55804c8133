#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "asrpower/energy.hpp"
#include "asrpower/errors.hpp"
#include "asrpower/placement.hpp"
#include "support.hpp"

using namespace asrpower;

namespace {

struct RandomInstance {
  std::vector<ComponentState> states;
  std::vector<double> hz;
  double capacity = 0.0;
};

// Integer byte counts and rates so every oracle comparison is exact in
// double arithmetic.
RandomInstance random_instance(std::uint32_t seed, std::size_t n) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::uint64_t> bytes(1, 2'000'000);
  std::uniform_int_distribution<int> rate(1, 200);
  RandomInstance inst;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t b = bytes(rng);
    total += b;
    inst.states.push_back(
        {testsupport::make_component("c" + std::to_string(i), b), b});
    inst.hz.push_back(rate(rng));
  }
  std::uniform_int_distribution<std::uint64_t> cap(0, total);
  inst.capacity = static_cast<double>(cap(rng));
  return inst;
}

double saved_traffic(const Placement& placement, const std::vector<double>& hz) {
  double saved = 0.0;
  for (std::size_t i = 0; i < hz.size(); ++i) {
    saved += placement.entries[i].local_bytes * hz[i];
  }
  return saved;
}

// Exhaustive 0/1 knapsack oracle: best locally-saved traffic over subsets.
double brute_force_whole(const RandomInstance& inst) {
  const std::size_t n = inst.states.size();
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double weight = 0.0;
    double value = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        weight += stored_bytes(inst.states[i]);
        value += stored_bytes(inst.states[i]) * inst.hz[i];
      }
    }
    if (weight <= inst.capacity) best = std::max(best, value);
  }
  return best;
}

// Continuous-knapsack oracle in unsigned 128-bit arithmetic.
double continuous_oracle(const RandomInstance& inst) {
  std::vector<std::size_t> order(inst.states.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return inst.hz[a] > inst.hz[b];
  });
  unsigned __int128 saved = 0;
  auto remaining = static_cast<std::uint64_t>(inst.capacity);
  for (std::size_t i : order) {
    const auto bytes = static_cast<std::uint64_t>(stored_bytes(inst.states[i]));
    const std::uint64_t taken = std::min(remaining, bytes);
    saved += static_cast<unsigned __int128>(taken) *
             static_cast<std::uint64_t>(inst.hz[i]);
    remaining -= taken;
  }
  return static_cast<double>(saved);
}

void check_placement_invariants(const Placement& placement,
                                const std::vector<ComponentState>& states,
                                double capacity) {
  double local_total = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& e = placement.entries[i];
    CHECK(e.local_bytes >= 0.0);
    CHECK(e.offchip_bytes >= 0.0);
    CHECK(e.local_bytes + e.offchip_bytes ==
          doctest::Approx(stored_bytes(states[i])).epsilon(1e-12));
    local_total += e.local_bytes;
  }
  CHECK(local_total <= capacity + 1e-6);
}

}  // namespace

TEST_CASE("placement: mode parsing") {
  CHECK(parse_placement_mode("fractional") == PlacementMode::kFractional);
  CHECK(parse_placement_mode("whole") == PlacementMode::kWholeComponent);
  CHECK(parse_placement_mode("whole_component") == PlacementMode::kWholeComponent);
  CHECK_THROWS_AS(parse_placement_mode("partial"), ConfigError);
  CHECK(to_string(PlacementMode::kFractional) == "fractional");
}

TEST_CASE("placement: compressed fusion component fills local memory first") {
  ModelDocument doc = testsupport::reference_document();
  doc.live_params[2] = 1'200'000;
  const std::vector<ComponentState> states = component_states(doc);
  const std::vector<double> hz = component_frequencies(
      doc.spec.components, invocation_profile(doc.spec.streaming));
  const double capacity = doc.spec.memory.local_weight_capacity_bytes;

  SUBCASE("fractional mode tops up with the next-hottest component") {
    const Placement p = allocate_local(states, hz, capacity, PlacementMode::kFractional);
    CHECK(p.entry("Joiner").local_bytes == doctest::Approx(1'200'000.0));
    CHECK(p.entry("Joiner").offchip_bytes == 0.0);
    CHECK(p.entry("Predictor").local_bytes == doctest::Approx(capacity - 1'200'000.0));
    CHECK(p.entry("Encoder").local_bytes == 0.0);
  }
  SUBCASE("whole mode leaves the remainder free") {
    const Placement p =
        allocate_local(states, hz, capacity, PlacementMode::kWholeComponent);
    CHECK(p.entry("Joiner").local_bytes == doctest::Approx(1'200'000.0));
    CHECK(p.entry("Predictor").local_bytes == 0.0);
    CHECK(p.entry("Encoder").local_bytes == 0.0);
  }
}

TEST_CASE("placement: zero capacity places everything off-chip") {
  const ModelDocument doc = testsupport::reference_document();
  const std::vector<ComponentState> states = component_states(doc);
  const std::vector<double> hz = component_frequencies(
      doc.spec.components, invocation_profile(doc.spec.streaming));
  for (const PlacementMode mode :
       {PlacementMode::kFractional, PlacementMode::kWholeComponent}) {
    const Placement p = allocate_local(states, hz, 0.0, mode);
    CHECK(p.local_bytes_total() == 0.0);
  }
  CHECK_THROWS_AS(allocate_local(states, hz, -1.0, PlacementMode::kFractional),
                  ConfigError);
}

TEST_CASE("placement: whole-component mode equals subset enumeration") {
  for (std::uint32_t seed = 1; seed <= 20; ++seed) {
    const RandomInstance inst = random_instance(seed, 10);
    const Placement p = allocate_local(inst.states, inst.hz, inst.capacity,
                                       PlacementMode::kWholeComponent);
    check_placement_invariants(p, inst.states, inst.capacity);
    for (const auto& e : p.entries) {
      CHECK((e.local_bytes == 0.0 || e.offchip_bytes == 0.0));
    }
    CHECK(saved_traffic(p, inst.hz) == brute_force_whole(inst));
  }
}

TEST_CASE("placement: fractional greedy equals the continuous-knapsack oracle") {
  for (std::uint32_t seed = 100; seed < 140; ++seed) {
    const RandomInstance inst = random_instance(seed, 12);
    const Placement p =
        allocate_local(inst.states, inst.hz, inst.capacity, PlacementMode::kFractional);
    check_placement_invariants(p, inst.states, inst.capacity);
    CHECK(saved_traffic(p, inst.hz) == continuous_oracle(inst));
  }
}

TEST_CASE("placement: fractional never saves less than whole-component") {
  for (std::uint32_t seed = 200; seed < 220; ++seed) {
    const RandomInstance inst = random_instance(seed, 9);
    const Placement fractional =
        allocate_local(inst.states, inst.hz, inst.capacity, PlacementMode::kFractional);
    const Placement whole = allocate_local(inst.states, inst.hz, inst.capacity,
                                           PlacementMode::kWholeComponent);
    CHECK(saved_traffic(fractional, inst.hz) >= saved_traffic(whole, inst.hz));
  }
}

TEST_CASE("placement: frequency ties break on size then name") {
  std::vector<ComponentState> states{
      {testsupport::make_component("bbb", 1000), 1000},
      {testsupport::make_component("aaa", 400), 400},
      {testsupport::make_component("ccc", 400), 400},
  };
  const std::vector<double> hz{10.0, 10.0, 10.0};
  const Placement p = allocate_local(states, hz, 900.0, PlacementMode::kFractional);
  // Smaller components first, names ordering equals among them.
  CHECK(p.entry("aaa").local_bytes == 400.0);
  CHECK(p.entry("ccc").local_bytes == 400.0);
  CHECK(p.entry("bbb").local_bytes == 100.0);
}

TEST_CASE("placement: power delta matches the closed form") {
  const ModelDocument doc = testsupport::reference_document();
  ModelDocument compressed = doc;
  compressed.live_params[2] = 1'200'000;
  const std::vector<ComponentState> states = component_states(compressed);
  const std::vector<double> hz = component_frequencies(
      doc.spec.components, invocation_profile(doc.spec.streaming));

  const Placement before = all_offchip(states);
  Placement after = before;
  after.entries[2].local_bytes = 1'200'000.0;
  after.entries[2].offchip_bytes = 0.0;

  const double delta = placement_power_delta_mw(before, after, hz, doc.spec.memory);
  const double joiner_hz = hz[2];
  CHECK(delta == doctest::Approx(1.2e6 * joiner_hz * 118.5e-12 * 1.049 * 1e3));
  CHECK(delta == doctest::Approx(16.93).epsilon(1e-3));
  CHECK(placement_power_delta_mw(before, before, hz, doc.spec.memory) == 0.0);

  // Same move priced without the calibration constant.
  MemoryConfig uncalibrated = doc.spec.memory;
  uncalibrated.energy_calibration = 1.0;
  CHECK(placement_power_delta_mw(before, after, hz, uncalibrated) ==
        doctest::Approx(16.14).epsilon(1e-3));
}

TEST_CASE("placement: entry lookup failure is an invariant error") {
  const Placement p;
  CHECK_THROWS_AS(p.entry("Encoder"), InvariantError);
}

TEST_CASE("placement: whole-component mode caps the component count") {
  RandomInstance inst = random_instance(7, 10);
  for (std::size_t i = 10; i < 33; ++i) {
    inst.states.push_back({testsupport::make_component("x" + std::to_string(i), 10), 10});
    inst.hz.push_back(1.0);
  }
  CHECK_THROWS_AS(
      allocate_local(inst.states, inst.hz, 100.0, PlacementMode::kWholeComponent),
      ConfigError);
}
