#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "asrpower/model.hpp"

namespace asrpower {

// Per-second invocation rates implied by the streaming parameters.
struct InvocationProfile {
  double frame_rate_hz = 0.0;
  double encoder_hz = 0.0;
  double predictor_hz = 0.0;
  double joiner_hz = 0.0;
};

// frame_rate = 1000/stride, encoder = 1000/chunk, predictor = token rate,
// joiner = frame_rate + joiner_beta * token_rate.
InvocationProfile invocation_profile(const StreamingParams& p);

// Rate for one canonical component name; throws ConfigError for names with
// no invocation rule.
double component_hz(const InvocationProfile& profile, std::string_view component);

std::vector<double> component_frequencies(std::span<const ComponentSpec> components,
                                          const InvocationProfile& profile);

// Inverts the joiner rate formula. token_rate == 0 admits a solution only
// when the observed rate equals the frame rate (beta 0).
double calibrate_joiner_beta(double observed_joiner_hz, double frame_rate_hz,
                             double token_rate_hz);

// Token emission times over one utterance.
struct UtteranceProfile {
  double duration_s = 0.0;
  std::vector<double> token_times;  // strictly increasing, within [0, duration_s]
};

UtteranceProfile regular_utterance(double duration_s, double token_rate_hz);
UtteranceProfile poisson_utterance(double duration_s, double mean_token_rate_hz,
                                   std::uint64_t seed);
UtteranceProfile make_utterance(const UtteranceSpec& spec);

struct InvocationCounts {
  std::uint64_t encoder = 0;
  std::uint64_t predictor = 0;
  std::uint64_t joiner = 0;
  std::uint64_t frames = 0;
};

// Event-level enactment of the greedy streaming decode loop: one encoder
// call per full chunk; one predictor call per token; per frame one joiner
// call ends on the blank plus a geometric number of expansion calls whose
// mean is joiner_beta scaled by the utterance's empirical token rate over
// the frame rate. Deterministic given the seed.
InvocationCounts simulate_decode(const StreamingParams& p, const UtteranceProfile& u,
                                 std::uint64_t seed);

}  // namespace asrpower
