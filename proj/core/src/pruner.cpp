#include "asrpower/pruner.hpp"

#include <algorithm>
#include <cmath>

#include "asrpower/errors.hpp"

namespace asrpower {

std::uint64_t PruneState::live_count() const {
  return static_cast<std::uint64_t>(std::count(live.begin(), live.end(), true));
}

PruneState adam_prune_step(PruneState state, std::uint64_t k) {
  if (state.values.size() != state.grad_sq.size() ||
      state.values.size() != state.live.size()) {
    throw InvariantError("prune state arrays differ in length");
  }
  if (k > state.live_count()) {
    throw ConfigError("cannot prune more parameters than are live");
  }
  if (k == 0) return state;

  std::vector<std::size_t> candidates;
  candidates.reserve(state.live.size());
  for (std::size_t i = 0; i < state.live.size(); ++i) {
    if (state.live[i]) candidates.push_back(i);
  }
  // Strict total order (grad_sq, index) makes the selected k-set unique, so
  // nth_element suffices without a full sort.
  const auto by_grad = [&](std::size_t a, std::size_t b) {
    if (state.grad_sq[a] != state.grad_sq[b]) return state.grad_sq[a] < state.grad_sq[b];
    return a < b;
  };
  std::nth_element(candidates.begin(), candidates.begin() + (k - 1), candidates.end(),
                   by_grad);
  for (std::uint64_t i = 0; i < k; ++i) state.live[candidates[i]] = false;
  return state;
}

std::vector<std::uint64_t> sparsity_schedule(std::uint64_t total_params,
                                             double target_sparsity,
                                             std::uint64_t steps) {
  if (target_sparsity < 0.0 || target_sparsity >= 1.0) {
    throw ConfigError("target sparsity must lie in [0, 1)");
  }
  if (steps == 0) throw ConfigError("schedule needs at least one step");

  // Round half to even on the total pruned count.
  const double exact = static_cast<double>(total_params) * target_sparsity;
  double total_pruned = std::round(exact);
  if (std::abs(exact - (std::floor(exact) + 0.5)) < 1e-9) {
    const double lower = std::floor(exact);
    total_pruned = std::fmod(lower, 2.0) == 0.0 ? lower : lower + 1.0;
  }

  const auto total = static_cast<std::uint64_t>(total_pruned);
  std::vector<std::uint64_t> ks(steps, total / steps);
  const std::uint64_t remainder = total % steps;
  for (std::uint64_t i = 0; i < remainder; ++i) ks[i] += 1;
  return ks;
}

}  // namespace asrpower
