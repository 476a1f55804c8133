#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace asrpower {

// Canonical component names of a streaming transducer. Custom names are
// accepted everywhere a frequency is supplied explicitly.
inline constexpr const char* kEncoder = "Encoder";
inline constexpr const char* kPredictor = "Predictor";
inline constexpr const char* kJoiner = "Joiner";

// Static description of one model component.
struct ComponentSpec {
  std::string name;
  std::uint64_t dense_params = 0;   // weight count of the uncompressed component
  double bytes_per_param = 1.0;     // 1 = INT8, 2 = FP16, ...
  double ops_factor = 1.0;          // ops per invocation = ops_factor * 2 * params
  std::uint64_t min_params = 0;     // compression floor for the planner
  double sparse_overhead = 1.0;     // stored bytes per surviving param, >= 1 once pruned

  bool operator==(const ComponentSpec&) const = default;
};

// A component at some compression level.
struct ComponentState {
  ComponentSpec spec;
  std::uint64_t live_params = 0;

  bool operator==(const ComponentState&) const = default;
};

// Weight bytes resident in memory for this state. Sparse storage overhead
// applies only once parameters have actually been removed.
double stored_bytes(const ComponentState& state);

ComponentState dense_state(const ComponentSpec& spec);

struct StreamingParams {
  double input_stride_ms = 40.0;  // audio per aggregated frame
  double chunk_ms = 160.0;        // audio per encoder batch; integer multiple of stride
  double token_rate_hz = 0.0;     // emitted non-blank tokens per second of audio
  double joiner_beta = 0.0;       // extra joiner calls per token beyond one-per-frame

  bool operator==(const StreamingParams&) const = default;
};

struct MemoryConfig {
  double local_weight_capacity_bytes = 1.5 * 1024.0 * 1024.0;
  double local_energy_pj_per_byte = 1.5;
  double offchip_energy_pj_per_byte = 120.0;
  double energy_calibration = 1.0;  // scalar on all memory energy
  double local_latency_ns_per_64B = 10.0;
  double offchip_latency_ns_per_64B = 60.0;
  double compute_efficiency_gops_per_mw = 5.0;  // INT8 accelerator efficiency
  double peak_compute_gops = 100.0;             // throughput ceiling for the RTF estimate

  bool operator==(const MemoryConfig&) const = default;
};

struct ModelSpec {
  std::vector<ComponentSpec> components;
  StreamingParams streaming;
  MemoryConfig memory;

  bool operator==(const ModelSpec&) const = default;
};

// Inline generative utterance description (config `utterance` section).
struct UtteranceSpec {
  double duration_s = 0.0;
  double token_rate_hz = 0.0;
  std::string process = "regular";  // "regular" or "poisson"
  std::uint64_t seed = 0;

  bool operator==(const UtteranceSpec&) const = default;
};

// Everything a config document can carry: the model spec, optional
// per-component live_params overrides, and an optional utterance section.
struct ModelDocument {
  ModelSpec spec;
  std::vector<std::uint64_t> live_params;  // aligned with spec.components
  std::optional<UtteranceSpec> utterance;
};

std::vector<ComponentState> component_states(const ModelDocument& doc);

struct ValidationReport {
  struct Violation {
    std::string component;  // empty for model-level violations
    std::string message;
  };
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

// Lists every violated invariant; empty report iff the spec is valid.
ValidationReport validate(const ModelSpec& spec);

// Parses and validates a config document (JSON, schema_version 1). Throws
// ConfigError on syntax errors (with position), unknown or mistyped fields,
// and invariant violations.
ModelDocument parse_model_document(const std::string& text);
ModelSpec parse_model_spec(const std::string& text);

// Canonical serialization; parse_model_spec(serialize_model_spec(s)) == s.
std::string serialize_model_spec(const ModelSpec& spec);
std::string serialize_model_document(const ModelDocument& doc);

}  // namespace asrpower
