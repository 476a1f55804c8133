#pragma once

#include <string>

#include "asrpower/energy.hpp"
#include "asrpower/io.hpp"
#include "asrpower/model.hpp"
#include "asrpower/planner.hpp"
#include "asrpower/workload.hpp"

namespace asrpower {

// Key/value pairs echoed into every report header so a run can be
// reproduced from its output alone.
struct RunSettings {
  std::vector<std::pair<std::string, std::string>> entries;
  void add(std::string key, std::string value);
};

std::string render_analyze_report(const ModelDocument& doc, const RunSettings& settings,
                                  const InvocationProfile& profile,
                                  const PowerBreakdown& breakdown,
                                  const Placement& placement, const RtfEstimate& rtf);

std::string render_fit_report(const RunSettings& settings, const CurveSet& curves);

std::string render_plan_report(const ModelDocument& doc, const RunSettings& settings,
                               const CompressionPlan& plan);

std::string render_simulate_report(const ModelDocument& doc, const RunSettings& settings,
                                   const UtteranceProfile& utterance,
                                   const InvocationProfile& profile,
                                   const InvocationCounts& counts);

}  // namespace asrpower
