#include "asrpower/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "asrpower/errors.hpp"

namespace asrpower {

double power_sensitivity_mw_per_million(const ComponentState& state, double hz,
                                        const ComponentPlacement& placement,
                                        const MemoryConfig& m) {
  // Removal frees off-chip bytes first; only a fully resident component
  // sheds local bytes.
  const double marginal_unit = placement.offchip_bytes > 0.5
                                   ? m.offchip_energy_pj_per_byte
                                   : m.local_energy_pj_per_byte;
  return hz * marginal_unit * state.spec.bytes_per_param * 1e6 * m.energy_calibration *
         1e-9;
}

namespace {

double component_accuracy_sensitivity(const ComponentState& state,
                                      const CurveSet& curves) {
  const auto it = curves.find(state.spec.name);
  if (it == curves.end()) {
    throw ConfigError("no accuracy curve for component '" + state.spec.name +
                      "' (fit one or mark it accuracy-insensitive)");
  }
  if (it->second.accuracy_insensitive) return 0.0;
  if (it->second.by_dataset.empty()) {
    throw ConfigError("no accuracy curve for component '" + state.spec.name +
                      "' (fit one or mark it accuracy-insensitive)");
  }
  double sum = 0.0;
  for (const auto& [dataset, curve] : it->second.by_dataset) {
    sum += accuracy_sensitivity(curve, static_cast<double>(state.live_params) / 1e6);
  }
  return sum / static_cast<double>(it->second.by_dataset.size());
}

// Argmax by ratio with the documented tie order; infinite ratios sort first.
bool better_candidate(const SensitivityEntry& a, const SensitivityEntry& b) {
  if (a.ratio_infinite != b.ratio_infinite) return a.ratio_infinite;
  if (a.ratio_infinite) {
    if (a.power_mw_per_million != b.power_mw_per_million) {
      return a.power_mw_per_million > b.power_mw_per_million;
    }
    return a.component < b.component;
  }
  if (a.ratio != b.ratio) return a.ratio > b.ratio;
  if (a.power_mw_per_million != b.power_mw_per_million) {
    return a.power_mw_per_million > b.power_mw_per_million;
  }
  return a.component < b.component;
}

}  // namespace

SensitivityReport sensitivity_report(std::span<const ComponentState> states,
                                     std::span<const double> hz, const CurveSet& curves,
                                     const Placement& placement, const MemoryConfig& m) {
  if (states.size() != hz.size()) {
    throw InvariantError("state and frequency lists differ in length");
  }
  SensitivityReport report;
  report.placement = placement;
  for (std::size_t i = 0; i < states.size(); ++i) {
    SensitivityEntry entry;
    entry.component = states[i].spec.name;
    entry.power_mw_per_million = power_sensitivity_mw_per_million(
        states[i], hz[i], placement.entry(states[i].spec.name), m);
    entry.accuracy_wer_per_million = component_accuracy_sensitivity(states[i], curves);
    if (entry.accuracy_wer_per_million > 0) {
      entry.ratio = entry.power_mw_per_million / entry.accuracy_wer_per_million;
    } else {
      entry.ratio = std::numeric_limits<double>::infinity();
      entry.ratio_infinite = true;
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

std::map<std::string, double> predicted_wer(std::span<const ComponentState> states,
                                            const CurveSet& curves) {
  // Each curve predicts the system WER as a function of its own component's
  // size. The dense-size predictions are averaged into one anchor per
  // dataset; per-component deltas from dense are treated as additive.
  struct Accumulator {
    double anchor_sum = 0.0;
    double delta_sum = 0.0;
    int curve_count = 0;
  };
  std::map<std::string, Accumulator> acc;
  for (const auto& state : states) {
    const auto it = curves.find(state.spec.name);
    if (it == curves.end() || it->second.accuracy_insensitive) continue;
    const double dense_m = static_cast<double>(state.spec.dense_params) / 1e6;
    const double live_m = static_cast<double>(state.live_params) / 1e6;
    for (const auto& [dataset, curve] : it->second.by_dataset) {
      const double dense_wer = predict_wer(curve, dense_m);
      Accumulator& a = acc[dataset];
      a.anchor_sum += dense_wer;
      a.delta_sum += predict_wer(curve, live_m) - dense_wer;
      a.curve_count += 1;
    }
  }
  std::map<std::string, double> out;
  for (const auto& [dataset, a] : acc) {
    out[dataset] = a.anchor_sum / a.curve_count + a.delta_sum;
  }
  return out;
}

CompressionPlan plan_compression(std::span<const ComponentState> initial,
                                 std::span<const double> hz, const CurveSet& curves,
                                 double target_mw, double step_millions,
                                 const MemoryConfig& m, PlacementMode mode) {
  if (initial.size() != hz.size()) {
    throw InvariantError("state and frequency lists differ in length");
  }
  if (target_mw <= 0) throw ConfigError("power reduction target must be positive");
  if (step_millions <= 0) throw ConfigError("step size must be positive");

  std::vector<ComponentState> states(initial.begin(), initial.end());
  const auto step_params = static_cast<std::uint64_t>(std::llround(step_millions * 1e6));
  if (step_params == 0) throw ConfigError("step size rounds to zero parameters");

  CompressionPlan plan;
  plan.target_mw_reduction = target_mw;

  Placement placement =
      allocate_local(states, hz, m.local_weight_capacity_bytes, mode);
  plan.baseline_mw = total_power(states, hz, placement, m).total_mw;
  plan.baseline_wer = predicted_wer(states, curves);

  double current_mw = plan.baseline_mw;
  while (plan.baseline_mw - current_mw < target_mw) {
    const SensitivityReport report =
        sensitivity_report(states, hz, curves, placement, m);

    const SensitivityEntry* choice = nullptr;
    for (const auto& entry : report.entries) {
      auto state_it = std::find_if(
          states.begin(), states.end(),
          [&](const ComponentState& s) { return s.spec.name == entry.component; });
      if (state_it->live_params <= state_it->spec.min_params) continue;
      if (choice == nullptr || better_candidate(entry, *choice)) choice = &entry;
    }
    if (choice == nullptr) {
      plan.termination_reason = kTerminationFloorReached;
      plan.achieved_mw_reduction = plan.baseline_mw - current_mw;
      return plan;
    }

    auto& state = *std::find_if(
        states.begin(), states.end(),
        [&](const ComponentState& s) { return s.spec.name == choice->component; });
    const std::uint64_t removable = state.live_params - state.spec.min_params;
    const std::uint64_t removed = std::min(step_params, removable);
    state.live_params -= removed;

    placement = allocate_local(states, hz, m.local_weight_capacity_bytes, mode);
    current_mw = total_power(states, hz, placement, m).total_mw;

    PlanStep step;
    step.component = state.spec.name;
    step.params_removed = removed;
    step.live_params = state.live_params;
    step.total_mw = current_mw;
    step.predicted_wer = predicted_wer(states, curves);
    step.placement = placement;
    plan.steps.push_back(std::move(step));
  }

  plan.termination_reason = kTerminationTargetReached;
  plan.achieved_mw_reduction = plan.baseline_mw - current_mw;
  return plan;
}

}  // namespace asrpower
