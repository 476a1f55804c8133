#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "asrpower/model.hpp"

namespace asrpower {

enum class PlacementMode {
  kFractional,      // components may split bytes across tiers
  kWholeComponent,  // a component is entirely local or entirely off-chip
};

PlacementMode parse_placement_mode(std::string_view text);
std::string to_string(PlacementMode mode);

struct ComponentPlacement {
  std::string component;
  double local_bytes = 0.0;
  double offchip_bytes = 0.0;
};

// Byte split across the two tiers; entries follow the component order of
// the states they were built from.
struct Placement {
  PlacementMode mode = PlacementMode::kFractional;
  std::vector<ComponentPlacement> entries;

  const ComponentPlacement& entry(std::string_view component) const;
  double local_bytes_total() const;
};

// Power-optimal assignment of weight bytes to local memory under the
// capacity budget. Per-byte saving is hz * (offchip_unit - local_unit), so
// fractional mode fills capacity by descending invocation frequency (ties:
// smaller component, then name); whole-component mode solves the 0/1
// knapsack exactly (supported up to 32 components).
Placement allocate_local(std::span<const ComponentState> states,
                         std::span<const double> hz, double capacity_bytes,
                         PlacementMode mode);

Placement all_offchip(std::span<const ComponentState> states);

// Memory power saved going from `before` to `after`; hz aligned with entries.
double placement_power_delta_mw(const Placement& before, const Placement& after,
                                std::span<const double> hz, const MemoryConfig& m);

}  // namespace asrpower
