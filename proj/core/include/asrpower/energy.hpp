#pragma once

#include <span>
#include <string>
#include <vector>

#include "asrpower/model.hpp"
#include "asrpower/placement.hpp"

namespace asrpower {

struct TierTraffic {
  double local_bytes_per_s = 0.0;
  double offchip_bytes_per_s = 0.0;
};

// Weights are re-streamed once per invocation; tier traffic is the placed
// byte count times the invocation rate. Throws InvariantError when the
// placement bytes do not sum to the state's stored bytes.
TierTraffic memory_traffic(const ComponentState& state, double hz,
                           const ComponentPlacement& placement);

double memory_power_mw(const TierTraffic& traffic, const MemoryConfig& m);

double compute_power_mw(const ComponentState& state, double hz, const MemoryConfig& m);

struct ComponentPower {
  std::string component;
  double memory_mw = 0.0;
  double compute_mw = 0.0;
  TierTraffic traffic;
};

struct PowerBreakdown {
  std::vector<ComponentPower> components;
  double memory_mw_total = 0.0;
  double compute_mw_total = 0.0;
  double total_mw = 0.0;
  TierTraffic traffic_total;
  double compute_share = 0.0;  // compute_mw_total / total_mw
  bool compute_below_one_percent = false;
};

PowerBreakdown total_power(std::span<const ComponentState> states,
                           std::span<const double> hz, const Placement& placement,
                           const MemoryConfig& m);

// Memory and compute are modeled as serialized, giving an upper bound.
struct RtfEstimate {
  double memory_term = 0.0;
  double compute_term = 0.0;
  double total() const { return memory_term + compute_term; }
};

RtfEstimate estimate_rtf(std::span<const ComponentState> states,
                         std::span<const double> hz, const Placement& placement,
                         const MemoryConfig& m);

}  // namespace asrpower
