#include "asrpower/model.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "asrpower/errors.hpp"

namespace asrpower {

using nlohmann::json;

double stored_bytes(const ComponentState& state) {
  const double overhead =
      state.live_params < state.spec.dense_params ? state.spec.sparse_overhead : 1.0;
  return static_cast<double>(state.live_params) * state.spec.bytes_per_param * overhead;
}

ComponentState dense_state(const ComponentSpec& spec) {
  return ComponentState{spec, spec.dense_params};
}

std::vector<ComponentState> component_states(const ModelDocument& doc) {
  std::vector<ComponentState> states;
  states.reserve(doc.spec.components.size());
  for (std::size_t i = 0; i < doc.spec.components.size(); ++i) {
    states.push_back(ComponentState{doc.spec.components[i], doc.live_params[i]});
  }
  return states;
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const auto& v : violations) {
    if (!v.component.empty()) out << v.component << ": ";
    out << v.message << "\n";
  }
  return out.str();
}

namespace {

bool is_integer_multiple(double value, double unit) {
  if (unit <= 0.0) return false;
  const double ratio = value / unit;
  const double k = std::round(ratio);
  return k >= 1.0 && std::abs(ratio - k) <= 1e-9 * k;
}

void check(ValidationReport& report, bool ok, const std::string& component,
           const std::string& message) {
  if (!ok) report.violations.push_back({component, message});
}

}  // namespace

ValidationReport validate(const ModelSpec& spec) {
  ValidationReport report;

  check(report, !spec.components.empty(), "", "at least one component is required");
  std::set<std::string> seen;
  for (const auto& c : spec.components) {
    if (!seen.insert(c.name).second) {
      report.violations.push_back({c.name, "component names must be unique"});
    }
    check(report, !c.name.empty(), c.name, "component name must be non-empty");
    check(report, c.dense_params > 0, c.name, "dense_params > 0 violated");
    check(report, c.bytes_per_param > 0, c.name, "bytes_per_param > 0 violated");
    check(report, c.ops_factor > 0, c.name, "ops_factor > 0 violated");
    check(report, c.min_params <= c.dense_params, c.name,
          "min_params <= dense_params violated");
    check(report, c.sparse_overhead >= 1.0, c.name, "sparse_overhead >= 1 violated");
  }

  const auto& s = spec.streaming;
  check(report, s.input_stride_ms > 0, "", "input_stride_ms > 0 violated");
  check(report, s.chunk_ms > 0, "", "chunk_ms > 0 violated");
  check(report, s.token_rate_hz >= 0, "", "token_rate_hz >= 0 violated");
  check(report, s.joiner_beta >= 0, "", "joiner_beta >= 0 violated");
  if (s.input_stride_ms > 0 && s.chunk_ms > 0) {
    check(report, is_integer_multiple(s.chunk_ms, s.input_stride_ms), "",
          "chunk not a multiple of stride");
  }

  const auto& m = spec.memory;
  check(report, m.local_weight_capacity_bytes > 0, "",
        "local_weight_capacity_bytes > 0 violated");
  check(report, m.local_energy_pj_per_byte > 0, "",
        "local_energy_pj_per_byte > 0 violated");
  check(report, m.offchip_energy_pj_per_byte > 0, "",
        "offchip_energy_pj_per_byte > 0 violated");
  check(report, m.energy_calibration > 0, "", "energy_calibration > 0 violated");
  check(report, m.local_latency_ns_per_64B > 0, "",
        "local_latency_ns_per_64B > 0 violated");
  check(report, m.offchip_latency_ns_per_64B > 0, "",
        "offchip_latency_ns_per_64B > 0 violated");
  check(report, m.compute_efficiency_gops_per_mw > 0, "",
        "compute_efficiency_gops_per_mw > 0 violated");
  check(report, m.peak_compute_gops > 0, "", "peak_compute_gops > 0 violated");
  check(report, m.local_energy_pj_per_byte < m.offchip_energy_pj_per_byte, "",
        "local energy unit must be below the off-chip unit");
  check(report, m.local_latency_ns_per_64B < m.offchip_latency_ns_per_64B, "",
        "local latency must be below the off-chip latency");

  return report;
}

namespace {

// Schema walking helpers: every object is checked against its known key
// set so typos surface as errors instead of silently applying defaults.

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& known) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!known.contains(key)) {
      throw ConfigError("unknown field '" + key + "' in " + where);
    }
  }
}

double get_number(const json& obj, const std::string& where, const std::string& key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
  return v.get<double>();
}

std::uint64_t get_count(const json& obj, const std::string& where, const std::string& key,
                        std::uint64_t fallback, bool required = false) {
  if (!obj.contains(key)) {
    if (required) throw ConfigError(where + " is missing required field '" + key + "'");
    return fallback;
  }
  const json& v = obj.at(key);
  if (!v.is_number_unsigned()) {
    throw ConfigError(where + "." + key + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::string get_string(const json& obj, const std::string& where, const std::string& key,
                       const std::string& fallback, bool required = false) {
  if (!obj.contains(key)) {
    if (required) throw ConfigError(where + " is missing required field '" + key + "'");
    return fallback;
  }
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(where + "." + key + " must be a string");
  return v.get<std::string>();
}

ComponentSpec parse_component(const json& obj, std::uint64_t& live_out) {
  if (!obj.is_object()) throw ConfigError("components entries must be objects");
  const std::string name = get_string(obj, "component", "name", "", /*required=*/true);
  const std::string where = "components." + name;
  require_keys(obj, where,
               {"name", "dense_params", "bytes_per_param", "ops_factor", "min_params",
                "sparse_overhead", "live_params"});

  ComponentSpec spec;
  spec.name = name;
  spec.dense_params = get_count(obj, where, "dense_params", 0, /*required=*/true);
  spec.bytes_per_param = get_number(obj, where, "bytes_per_param", 1.0);
  spec.ops_factor = get_number(obj, where, "ops_factor", 1.0);
  // The language model is the one component whose floor carries a default:
  // a tenth of its dense size. Everything else may shrink freely.
  const std::uint64_t default_min = name == kPredictor ? spec.dense_params / 10 : 0;
  spec.min_params = get_count(obj, where, "min_params", default_min);
  spec.sparse_overhead = get_number(obj, where, "sparse_overhead", 1.0);
  live_out = get_count(obj, where, "live_params", spec.dense_params);
  return spec;
}

StreamingParams parse_streaming(const json& obj) {
  if (!obj.is_object()) throw ConfigError("streaming must be an object");
  require_keys(obj, "streaming",
               {"input_stride_ms", "chunk_ms", "token_rate_hz", "joiner_beta"});
  StreamingParams p;
  p.input_stride_ms = get_number(obj, "streaming", "input_stride_ms", p.input_stride_ms);
  p.chunk_ms = get_number(obj, "streaming", "chunk_ms", p.chunk_ms);
  p.token_rate_hz = get_number(obj, "streaming", "token_rate_hz", p.token_rate_hz);
  p.joiner_beta = get_number(obj, "streaming", "joiner_beta", p.joiner_beta);
  return p;
}

MemoryConfig parse_memory(const json& obj) {
  if (!obj.is_object()) throw ConfigError("memory must be an object");
  require_keys(obj, "memory",
               {"local_weight_capacity_bytes", "local_energy_pj_per_byte",
                "offchip_energy_pj_per_byte", "energy_calibration",
                "local_latency_ns_per_64B", "offchip_latency_ns_per_64B",
                "compute_efficiency_gops_per_mw", "peak_compute_gops"});
  MemoryConfig m;
  m.local_weight_capacity_bytes =
      get_number(obj, "memory", "local_weight_capacity_bytes", m.local_weight_capacity_bytes);
  m.local_energy_pj_per_byte =
      get_number(obj, "memory", "local_energy_pj_per_byte", m.local_energy_pj_per_byte);
  m.offchip_energy_pj_per_byte =
      get_number(obj, "memory", "offchip_energy_pj_per_byte", m.offchip_energy_pj_per_byte);
  m.energy_calibration = get_number(obj, "memory", "energy_calibration", m.energy_calibration);
  m.local_latency_ns_per_64B =
      get_number(obj, "memory", "local_latency_ns_per_64B", m.local_latency_ns_per_64B);
  m.offchip_latency_ns_per_64B =
      get_number(obj, "memory", "offchip_latency_ns_per_64B", m.offchip_latency_ns_per_64B);
  m.compute_efficiency_gops_per_mw = get_number(obj, "memory", "compute_efficiency_gops_per_mw",
                                                m.compute_efficiency_gops_per_mw);
  m.peak_compute_gops = get_number(obj, "memory", "peak_compute_gops", m.peak_compute_gops);
  return m;
}

UtteranceSpec parse_utterance(const json& obj) {
  if (!obj.is_object()) throw ConfigError("utterance must be an object");
  require_keys(obj, "utterance", {"duration_s", "token_rate_hz", "process", "seed"});
  UtteranceSpec u;
  u.duration_s = get_number(obj, "utterance", "duration_s", 0.0);
  if (u.duration_s <= 0) throw ConfigError("utterance.duration_s must be positive");
  u.token_rate_hz = get_number(obj, "utterance", "token_rate_hz", 0.0);
  if (u.token_rate_hz < 0) throw ConfigError("utterance.token_rate_hz must be >= 0");
  u.process = get_string(obj, "utterance", "process", "regular");
  if (u.process != "regular" && u.process != "poisson") {
    throw ConfigError("utterance.process must be 'regular' or 'poisson'");
  }
  u.seed = get_count(obj, "utterance", "seed", 0);
  return u;
}

}  // namespace

ModelDocument parse_model_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config document must be an object");
  require_keys(doc, "document",
               {"schema_version", "components", "streaming", "memory", "utterance"});

  if (!doc.contains("schema_version")) {
    throw ConfigError("missing required field 'schema_version'");
  }
  if (!doc.at("schema_version").is_number_integer() ||
      doc.at("schema_version").get<std::int64_t>() != 1) {
    throw ConfigError("unsupported schema_version (expected 1)");
  }
  if (!doc.contains("components") || !doc.at("components").is_array()) {
    throw ConfigError("missing required array 'components'");
  }
  if (!doc.contains("streaming")) {
    throw ConfigError("missing required field 'streaming'");
  }

  ModelDocument out;
  for (const json& c : doc.at("components")) {
    std::uint64_t live = 0;
    out.spec.components.push_back(parse_component(c, live));
    out.live_params.push_back(live);
  }
  out.spec.streaming = parse_streaming(doc.at("streaming"));
  if (doc.contains("memory")) out.spec.memory = parse_memory(doc.at("memory"));
  if (doc.contains("utterance")) out.utterance = parse_utterance(doc.at("utterance"));

  ValidationReport report = validate(out.spec);
  for (std::size_t i = 0; i < out.spec.components.size(); ++i) {
    const auto& c = out.spec.components[i];
    const std::uint64_t live = out.live_params[i];
    check(report, live >= c.min_params && live <= c.dense_params, c.name,
          "min_params <= live_params <= dense_params violated");
  }
  if (!report.ok()) throw ConfigError("invalid config:\n" + report.to_string());
  return out;
}

ModelSpec parse_model_spec(const std::string& text) {
  return parse_model_document(text).spec;
}

namespace {

json component_json(const ComponentSpec& c) {
  return json{{"name", c.name},
              {"dense_params", c.dense_params},
              {"bytes_per_param", c.bytes_per_param},
              {"ops_factor", c.ops_factor},
              {"min_params", c.min_params},
              {"sparse_overhead", c.sparse_overhead}};
}

json document_json(const ModelSpec& spec) {
  json components = json::array();
  for (const auto& c : spec.components) components.push_back(component_json(c));
  const auto& s = spec.streaming;
  const auto& m = spec.memory;
  return json{
      {"schema_version", 1},
      {"components", components},
      {"streaming",
       {{"input_stride_ms", s.input_stride_ms},
        {"chunk_ms", s.chunk_ms},
        {"token_rate_hz", s.token_rate_hz},
        {"joiner_beta", s.joiner_beta}}},
      {"memory",
       {{"local_weight_capacity_bytes", m.local_weight_capacity_bytes},
        {"local_energy_pj_per_byte", m.local_energy_pj_per_byte},
        {"offchip_energy_pj_per_byte", m.offchip_energy_pj_per_byte},
        {"energy_calibration", m.energy_calibration},
        {"local_latency_ns_per_64B", m.local_latency_ns_per_64B},
        {"offchip_latency_ns_per_64B", m.offchip_latency_ns_per_64B},
        {"compute_efficiency_gops_per_mw", m.compute_efficiency_gops_per_mw},
        {"peak_compute_gops", m.peak_compute_gops}}}};
}

}  // namespace

std::string serialize_model_spec(const ModelSpec& spec) {
  return document_json(spec).dump(2) + "\n";
}

std::string serialize_model_document(const ModelDocument& doc) {
  json j = document_json(doc.spec);
  for (std::size_t i = 0; i < doc.spec.components.size(); ++i) {
    j["components"][i]["live_params"] = doc.live_params[i];
  }
  if (doc.utterance) {
    const auto& u = *doc.utterance;
    j["utterance"] = {{"duration_s", u.duration_s},
                      {"token_rate_hz", u.token_rate_hz},
                      {"process", u.process},
                      {"seed", u.seed}};
  }
  return j.dump(2) + "\n";
}

}  // namespace asrpower
