#include "asrpower/placement.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "asrpower/energy.hpp"
#include "asrpower/errors.hpp"

namespace asrpower {

PlacementMode parse_placement_mode(std::string_view text) {
  if (text == "fractional") return PlacementMode::kFractional;
  if (text == "whole" || text == "whole_component") return PlacementMode::kWholeComponent;
  throw ConfigError("unknown placement mode '" + std::string(text) +
                    "' (expected 'fractional' or 'whole')");
}

std::string to_string(PlacementMode mode) {
  return mode == PlacementMode::kFractional ? "fractional" : "whole_component";
}

const ComponentPlacement& Placement::entry(std::string_view component) const {
  for (const auto& e : entries) {
    if (e.component == component) return e;
  }
  throw InvariantError("placement has no entry for component '" +
                       std::string(component) + "'");
}

double Placement::local_bytes_total() const {
  double total = 0.0;
  for (const auto& e : entries) total += e.local_bytes;
  return total;
}

namespace {

std::vector<std::size_t> frequency_order(std::span<const ComponentState> states,
                                         std::span<const double> hz) {
  std::vector<std::size_t> order(states.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (hz[a] != hz[b]) return hz[a] > hz[b];
    const double bytes_a = stored_bytes(states[a]);
    const double bytes_b = stored_bytes(states[b]);
    if (bytes_a != bytes_b) return bytes_a < bytes_b;
    return states[a].spec.name < states[b].spec.name;
  });
  return order;
}

// Every byte saves hz x (offchip_unit - local_unit) when moved local, so the
// continuous knapsack is solved by filling capacity in frequency order.
void fill_fractional(Placement& placement, std::span<const ComponentState> states,
                     std::span<const double> hz, double capacity_bytes) {
  double remaining = capacity_bytes;
  for (std::size_t i : frequency_order(states, hz)) {
    const double bytes = stored_bytes(states[i]);
    const double local = std::min(remaining, bytes);
    placement.entries[i].local_bytes = local;
    placement.entries[i].offchip_bytes = bytes - local;
    remaining -= local;
  }
}

struct HalfSolution {
  double weight = 0.0;
  double value = 0.0;
  std::uint32_t mask = 0;
};

std::vector<HalfSolution> enumerate_half(std::span<const ComponentState> states,
                                         std::span<const double> hz, std::size_t begin,
                                         std::size_t end, double capacity) {
  const std::size_t n = end - begin;
  std::vector<HalfSolution> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    HalfSolution s;
    s.mask = mask;
    for (std::size_t bit = 0; bit < n; ++bit) {
      if (mask & (std::uint32_t{1} << bit)) {
        const double bytes = stored_bytes(states[begin + bit]);
        s.weight += bytes;
        s.value += bytes * hz[begin + bit];
      }
    }
    if (s.weight <= capacity) out.push_back(s);
  }
  return out;
}

// Exact 0/1 knapsack via meet-in-the-middle: value is the traffic saved
// (bytes x hz, the per-byte saving being tier-independent), weight is the
// stored byte count.
std::uint64_t solve_whole_component(std::span<const ComponentState> states,
                                    std::span<const double> hz, double capacity) {
  const std::size_t n = states.size();
  if (n > 32) {
    throw ConfigError("whole-component placement supports at most 32 components");
  }
  const std::size_t half = n / 2;

  std::vector<HalfSolution> low = enumerate_half(states, hz, 0, half, capacity);
  std::vector<HalfSolution> high = enumerate_half(states, hz, half, n, capacity);

  std::sort(high.begin(), high.end(), [](const HalfSolution& a, const HalfSolution& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    if (a.value != b.value) return a.value > b.value;
    return a.mask < b.mask;
  });
  // Prefix-dominant table: after this pass, the best reachable value at
  // weight <= w is the last entry with weight <= w.
  std::vector<HalfSolution> pareto;
  for (const auto& s : high) {
    if (pareto.empty() || s.value > pareto.back().value) pareto.push_back(s);
  }

  double best_value = -1.0;
  std::uint64_t best_mask = 0;
  std::sort(low.begin(), low.end(), [](const HalfSolution& a, const HalfSolution& b) {
    return a.mask < b.mask;
  });
  for (const auto& s : low) {
    const double budget = capacity - s.weight;
    auto it = std::upper_bound(
        pareto.begin(), pareto.end(), budget,
        [](double cap, const HalfSolution& entry) { return cap < entry.weight; });
    if (it == pareto.begin()) continue;
    const auto& match = *std::prev(it);
    const double value = s.value + match.value;
    if (value > best_value) {
      best_value = value;
      best_mask = (static_cast<std::uint64_t>(match.mask) << half) | s.mask;
    }
  }
  return best_value < 0 ? 0 : best_mask;
}

}  // namespace

Placement allocate_local(std::span<const ComponentState> states,
                         std::span<const double> hz, double capacity_bytes,
                         PlacementMode mode) {
  if (states.size() != hz.size()) {
    throw InvariantError("state and frequency lists differ in length");
  }
  if (capacity_bytes < 0) throw ConfigError("capacity must be non-negative");

  Placement placement;
  placement.mode = mode;
  placement.entries.reserve(states.size());
  for (const auto& s : states) {
    placement.entries.push_back({s.spec.name, 0.0, stored_bytes(s)});
  }

  if (mode == PlacementMode::kFractional) {
    fill_fractional(placement, states, hz, capacity_bytes);
    return placement;
  }

  const std::uint64_t mask = solve_whole_component(states, hz, capacity_bytes);
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (mask & (std::uint64_t{1} << i)) {
      placement.entries[i].local_bytes = placement.entries[i].offchip_bytes;
      placement.entries[i].offchip_bytes = 0.0;
    }
  }
  return placement;
}

Placement all_offchip(std::span<const ComponentState> states) {
  Placement placement;
  placement.mode = PlacementMode::kWholeComponent;
  placement.entries.reserve(states.size());
  for (const auto& s : states) {
    placement.entries.push_back({s.spec.name, 0.0, stored_bytes(s)});
  }
  return placement;
}

double placement_power_delta_mw(const Placement& before, const Placement& after,
                                std::span<const double> hz, const MemoryConfig& m) {
  if (before.entries.size() != after.entries.size() ||
      before.entries.size() != hz.size()) {
    throw InvariantError("placements and frequency list differ in length");
  }
  double delta = 0.0;
  for (std::size_t i = 0; i < hz.size(); ++i) {
    const TierTraffic traffic_before{before.entries[i].local_bytes * hz[i],
                                     before.entries[i].offchip_bytes * hz[i]};
    const TierTraffic traffic_after{after.entries[i].local_bytes * hz[i],
                                    after.entries[i].offchip_bytes * hz[i]};
    delta += memory_power_mw(traffic_before, m) - memory_power_mw(traffic_after, m);
  }
  return delta;
}

}  // namespace asrpower
