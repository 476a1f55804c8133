#include "asrpower/workload.hpp"

#include <cmath>
#include <random>

#include "asrpower/errors.hpp"

namespace asrpower {

namespace {

// Uniform in [0, 1) from the standardized mt19937_64 bit stream; used
// instead of <random> distributions so seeded runs are identical across
// standard library implementations.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Geometric count on {0, 1, ...} with success probability p by inversion.
std::uint64_t geometric_draw(std::mt19937_64& rng, double p) {
  const double u = uniform01(rng);
  return static_cast<std::uint64_t>(std::log1p(-u) / std::log1p(-p));
}

// Exponential gap with the given rate by inversion.
double exponential_draw(std::mt19937_64& rng, double rate) {
  return -std::log1p(-uniform01(rng)) / rate;
}

}  // namespace

InvocationProfile invocation_profile(const StreamingParams& p) {
  if (p.input_stride_ms <= 0 || p.chunk_ms <= 0) {
    throw ConfigError("stride and chunk must be positive");
  }
  if (p.token_rate_hz < 0 || p.joiner_beta < 0) {
    throw ConfigError("token rate and joiner beta must be non-negative");
  }
  InvocationProfile profile;
  profile.frame_rate_hz = 1000.0 / p.input_stride_ms;
  profile.encoder_hz = 1000.0 / p.chunk_ms;
  profile.predictor_hz = p.token_rate_hz;
  profile.joiner_hz = profile.frame_rate_hz + p.joiner_beta * p.token_rate_hz;
  return profile;
}

double component_hz(const InvocationProfile& profile, std::string_view component) {
  if (component == kEncoder) return profile.encoder_hz;
  if (component == kPredictor) return profile.predictor_hz;
  if (component == kJoiner) return profile.joiner_hz;
  throw ConfigError("no invocation rule for component '" + std::string(component) + "'");
}

std::vector<double> component_frequencies(std::span<const ComponentSpec> components,
                                          const InvocationProfile& profile) {
  std::vector<double> hz;
  hz.reserve(components.size());
  for (const auto& c : components) hz.push_back(component_hz(profile, c.name));
  return hz;
}

double calibrate_joiner_beta(double observed_joiner_hz, double frame_rate_hz,
                             double token_rate_hz) {
  if (frame_rate_hz <= 0) throw ConfigError("frame rate must be positive");
  if (observed_joiner_hz < frame_rate_hz) {
    throw ConfigError("observed joiner rate is below the frame rate");
  }
  if (token_rate_hz <= 0) {
    if (observed_joiner_hz == frame_rate_hz) return 0.0;
    throw ConfigError("token rate 0 cannot explain joiner rate above the frame rate");
  }
  return (observed_joiner_hz - frame_rate_hz) / token_rate_hz;
}

UtteranceProfile regular_utterance(double duration_s, double token_rate_hz) {
  if (duration_s <= 0) throw ConfigError("utterance duration must be positive");
  if (token_rate_hz < 0) throw ConfigError("token rate must be non-negative");
  UtteranceProfile u;
  u.duration_s = duration_s;
  if (token_rate_hz > 0) {
    const auto count =
        static_cast<std::uint64_t>(std::floor(duration_s * token_rate_hz + 1e-9));
    u.token_times.reserve(count);
    for (std::uint64_t k = 1; k <= count; ++k) {
      u.token_times.push_back(static_cast<double>(k) / token_rate_hz);
    }
  }
  return u;
}

UtteranceProfile poisson_utterance(double duration_s, double mean_token_rate_hz,
                                   std::uint64_t seed) {
  if (duration_s <= 0) throw ConfigError("utterance duration must be positive");
  if (mean_token_rate_hz < 0) throw ConfigError("token rate must be non-negative");
  UtteranceProfile u;
  u.duration_s = duration_s;
  if (mean_token_rate_hz > 0) {
    std::mt19937_64 rng(seed);
    double t = exponential_draw(rng, mean_token_rate_hz);
    while (t <= duration_s) {
      u.token_times.push_back(t);
      t += exponential_draw(rng, mean_token_rate_hz);
    }
  }
  return u;
}

UtteranceProfile make_utterance(const UtteranceSpec& spec) {
  if (spec.process == "poisson") {
    return poisson_utterance(spec.duration_s, spec.token_rate_hz, spec.seed);
  }
  if (spec.process == "regular") {
    return regular_utterance(spec.duration_s, spec.token_rate_hz);
  }
  throw ConfigError("unknown utterance process '" + spec.process + "'");
}

InvocationCounts simulate_decode(const StreamingParams& p, const UtteranceProfile& u,
                                 std::uint64_t seed) {
  if (u.duration_s * 1000.0 + 1e-6 < p.chunk_ms) {
    throw ConfigError("utterance shorter than one chunk");
  }
  double prev = -1.0;
  for (double t : u.token_times) {
    if (t <= prev || t < 0.0 || t > u.duration_s) {
      throw ConfigError("token times must be strictly increasing within the utterance");
    }
    prev = t;
  }

  InvocationCounts counts;
  counts.encoder =
      static_cast<std::uint64_t>(std::floor(u.duration_s * 1000.0 / p.chunk_ms + 1e-9));
  counts.frames = static_cast<std::uint64_t>(
      std::floor(u.duration_s * 1000.0 / p.input_stride_ms + 1e-9));
  counts.predictor = u.token_times.size();

  // Each frame issues one joiner call that lands on the blank; non-blank
  // expansions are drawn geometrically so they average beta per token.
  counts.joiner = counts.frames;
  const double frame_rate_hz = 1000.0 / p.input_stride_ms;
  const double empirical_token_hz =
      static_cast<double>(counts.predictor) / u.duration_s;
  const double mean_expansions = p.joiner_beta * empirical_token_hz / frame_rate_hz;
  if (mean_expansions > 0.0 && counts.frames > 0) {
    std::mt19937_64 rng(seed);
    const double p = 1.0 / (1.0 + mean_expansions);
    for (std::uint64_t f = 0; f < counts.frames; ++f) {
      counts.joiner += geometric_draw(rng, p);
    }
  }
  return counts;
}

}  // namespace asrpower
