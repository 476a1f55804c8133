#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "asrpower/curvefit.hpp"
#include "asrpower/energy.hpp"
#include "asrpower/model.hpp"
#include "asrpower/placement.hpp"

namespace asrpower {

// Accuracy model for one component: one fitted curve per dataset tag, or an
// explicit accuracy-insensitive marker (zero sensitivity, infinite ratio).
struct ComponentCurves {
  std::map<std::string, AccuracyCurve> by_dataset;
  bool accuracy_insensitive = false;
};

using CurveSet = std::map<std::string, ComponentCurves>;

// Marginal memory power per million parameters removed. The marginal energy
// unit is off-chip while the component keeps any off-chip bytes, local once
// it is fully resident.
double power_sensitivity_mw_per_million(const ComponentState& state, double hz,
                                        const ComponentPlacement& placement,
                                        const MemoryConfig& m);

struct SensitivityEntry {
  std::string component;
  double power_mw_per_million = 0.0;
  double accuracy_wer_per_million = 0.0;  // mean across dataset curves
  double ratio = 0.0;                     // power / accuracy
  bool ratio_infinite = false;            // accuracy sensitivity was zero
};

struct SensitivityReport {
  std::vector<SensitivityEntry> entries;
  Placement placement;  // snapshot the sensitivities were evaluated against
};

SensitivityReport sensitivity_report(std::span<const ComponentState> states,
                                     std::span<const double> hz, const CurveSet& curves,
                                     const Placement& placement, const MemoryConfig& m);

struct PlanStep {
  std::string component;
  std::uint64_t params_removed = 0;
  std::uint64_t live_params = 0;             // after the step
  double total_mw = 0.0;                     // after the step, placement re-optimized
  std::map<std::string, double> predicted_wer;  // per dataset tag
  Placement placement;                       // after the step
};

inline constexpr const char* kTerminationTargetReached = "target reached";
inline constexpr const char* kTerminationFloorReached = "floor reached";

struct CompressionPlan {
  std::vector<PlanStep> steps;
  double target_mw_reduction = 0.0;
  double achieved_mw_reduction = 0.0;
  std::string termination_reason;
  double baseline_mw = 0.0;                       // initial state, placement optimized
  std::map<std::string, double> baseline_wer;     // predicted at the initial state
};

// Greedy schedule toward the power-reduction target: each iteration
// re-optimizes placement, recomputes the power-to-accuracy ratios, and
// shrinks the highest-ratio component by one step (clamped to its floor).
// Ties break on higher power sensitivity, then name order.
CompressionPlan plan_compression(std::span<const ComponentState> initial,
                                 std::span<const double> hz, const CurveSet& curves,
                                 double target_mw, double step_millions,
                                 const MemoryConfig& m, PlacementMode mode);

// Model WER for a state: mean dense-size prediction across the components
// carrying a curve for the dataset, plus each component's delta from dense.
std::map<std::string, double> predicted_wer(std::span<const ComponentState> states,
                                            const CurveSet& curves);

}  // namespace asrpower
