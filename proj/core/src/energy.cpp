#include "asrpower/energy.hpp"

#include <cmath>

#include "asrpower/errors.hpp"

namespace asrpower {

TierTraffic memory_traffic(const ComponentState& state, double hz,
                           const ComponentPlacement& placement) {
  if (hz < 0) throw InvariantError("invocation rate must be non-negative");
  const double placed = placement.local_bytes + placement.offchip_bytes;
  if (std::abs(placed - stored_bytes(state)) > 0.5) {
    throw InvariantError("placement bytes for '" + state.spec.name +
                         "' do not sum to its stored bytes");
  }
  return TierTraffic{placement.local_bytes * hz, placement.offchip_bytes * hz};
}

double memory_power_mw(const TierTraffic& traffic, const MemoryConfig& m) {
  return m.energy_calibration *
         (traffic.local_bytes_per_s * m.local_energy_pj_per_byte +
          traffic.offchip_bytes_per_s * m.offchip_energy_pj_per_byte) *
         1e-9;
}

double compute_power_mw(const ComponentState& state, double hz, const MemoryConfig& m) {
  const double ops_per_s =
      state.spec.ops_factor * 2.0 * static_cast<double>(state.live_params) * hz;
  return ops_per_s / (m.compute_efficiency_gops_per_mw * 1e9);
}

PowerBreakdown total_power(std::span<const ComponentState> states,
                           std::span<const double> hz, const Placement& placement,
                           const MemoryConfig& m) {
  if (states.size() != hz.size()) {
    throw InvariantError("state and frequency lists differ in length");
  }
  PowerBreakdown breakdown;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& entry = placement.entry(states[i].spec.name);
    ComponentPower power;
    power.component = states[i].spec.name;
    power.traffic = memory_traffic(states[i], hz[i], entry);
    power.memory_mw = memory_power_mw(power.traffic, m);
    power.compute_mw = compute_power_mw(states[i], hz[i], m);
    breakdown.memory_mw_total += power.memory_mw;
    breakdown.compute_mw_total += power.compute_mw;
    breakdown.traffic_total.local_bytes_per_s += power.traffic.local_bytes_per_s;
    breakdown.traffic_total.offchip_bytes_per_s += power.traffic.offchip_bytes_per_s;
    breakdown.components.push_back(std::move(power));
  }
  breakdown.total_mw = breakdown.memory_mw_total + breakdown.compute_mw_total;
  breakdown.compute_share =
      breakdown.total_mw > 0 ? breakdown.compute_mw_total / breakdown.total_mw : 0.0;
  breakdown.compute_below_one_percent = breakdown.compute_share < 0.01;
  return breakdown;
}

RtfEstimate estimate_rtf(std::span<const ComponentState> states,
                         std::span<const double> hz, const Placement& placement,
                         const MemoryConfig& m) {
  if (states.size() != hz.size()) {
    throw InvariantError("state and frequency lists differ in length");
  }
  const double local_s_per_byte = m.local_latency_ns_per_64B / 64.0 * 1e-9;
  const double offchip_s_per_byte = m.offchip_latency_ns_per_64B / 64.0 * 1e-9;
  RtfEstimate rtf;
  double ops_per_s = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const TierTraffic traffic =
        memory_traffic(states[i], hz[i], placement.entry(states[i].spec.name));
    rtf.memory_term += traffic.local_bytes_per_s * local_s_per_byte +
                       traffic.offchip_bytes_per_s * offchip_s_per_byte;
    ops_per_s += states[i].spec.ops_factor * 2.0 *
                 static_cast<double>(states[i].live_params) * hz[i];
  }
  rtf.compute_term = ops_per_s / (m.peak_compute_gops * 1e9);
  return rtf;
}

}  // namespace asrpower
