#pragma once

#include <cstdint>
#include <vector>

namespace asrpower {

// Per-parameter pruning state: magnitudes, running squared-gradient
// estimates, and a live mask. Pruned entries never come back.
struct PruneState {
  std::vector<double> values;
  std::vector<double> grad_sq;
  std::vector<bool> live;

  std::uint64_t live_count() const;
};

// Prunes exactly k live parameters with the smallest grad_sq; ties break on
// the lower index. Throws ConfigError when k exceeds the live count.
PruneState adam_prune_step(PruneState state, std::uint64_t k);

// Per-step removal counts reaching round(total * target_sparsity) after the
// last step, spread as evenly as possible (counts differ by at most one).
// Half-way totals round to even.
std::vector<std::uint64_t> sparsity_schedule(std::uint64_t total_params,
                                             double target_sparsity,
                                             std::uint64_t steps);

}  // namespace asrpower
