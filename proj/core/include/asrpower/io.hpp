#pragma once

#include <map>
#include <string>
#include <vector>

#include "asrpower/curvefit.hpp"
#include "asrpower/energy.hpp"
#include "asrpower/planner.hpp"
#include "asrpower/pruner.hpp"
#include "asrpower/workload.hpp"

namespace asrpower {

// Fixed-decimal formatting used by every CSV and report writer so identical
// inputs produce byte-identical output. Negative zero is normalized.
std::string format_fixed(double value, int decimals);

// (component, size, wer[, dataset]) rows for curve fitting. The size column
// header may be `size_millions` or `live_params_millions`; a missing or
// empty dataset_tag maps to "default".
struct WerPointRow {
  std::string component;
  std::string dataset;
  SizeWerPoint point;
};

std::vector<WerPointRow> parse_points_csv(const std::string& text);

// Fits one curve per (component, dataset) group present in the rows.
CurveSet fit_curves(const std::vector<WerPointRow>& rows);

// Utterance file: `field,value` rows with one `duration_s` and strictly
// increasing `token_s` rows.
UtteranceProfile parse_utterance_csv(const std::string& text);
std::string utterance_csv(const UtteranceProfile& u);

// PruneState as (index,value,grad_sq,live) rows.
PruneState parse_prune_state_csv(const std::string& text);
std::string prune_state_csv(const PruneState& state);

std::string power_breakdown_csv(const PowerBreakdown& breakdown);
std::string curves_csv(const CurveSet& curves);
std::string predictions_csv(const CurveSet& curves, double min_size_millions,
                            double max_size_millions, int grid_points);
std::string plan_csv(const CompressionPlan& plan);
std::string counts_csv(const InvocationCounts& counts, double duration_s,
                       const InvocationProfile& profile);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace asrpower
