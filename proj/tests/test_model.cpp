#include <doctest.h>

#include "asrpower/errors.hpp"
#include "asrpower/model.hpp"
#include "support.hpp"

using namespace asrpower;

namespace {

const char* kMinimalConfig = R"({
  "schema_version": 1,
  "components": [
    {"name": "Encoder", "dense_params": 60700000, "ops_factor": 5.3},
    {"name": "Predictor", "dense_params": 8500000, "ops_factor": 0.765},
    {"name": "Joiner", "dense_params": 4000000}
  ],
  "streaming": {"input_stride_ms": 40, "chunk_ms": 160, "token_rate_hz": 11.53,
                "joiner_beta": 7.675628794449263}
})";

}  // namespace

TEST_CASE("model: parses a minimal config and applies defaults") {
  const ModelDocument doc = parse_model_document(kMinimalConfig);
  REQUIRE(doc.spec.components.size() == 3);

  const ComponentSpec& encoder = doc.spec.components[0];
  CHECK(encoder.name == kEncoder);
  CHECK(encoder.dense_params == 60'700'000);
  CHECK(encoder.bytes_per_param == 1.0);
  CHECK(encoder.ops_factor == 5.3);
  CHECK(encoder.min_params == 0);
  CHECK(encoder.sparse_overhead == 1.0);

  // The language-model component floors at a tenth of dense by default.
  CHECK(doc.spec.components[1].min_params == 850'000);
  CHECK(doc.spec.components[2].min_params == 0);

  CHECK(doc.live_params == std::vector<std::uint64_t>{60'700'000, 8'500'000, 4'000'000});
  CHECK(doc.spec.streaming.token_rate_hz == 11.53);
  CHECK_FALSE(doc.utterance.has_value());

  // Memory defaults.
  const MemoryConfig& m = doc.spec.memory;
  CHECK(m.local_weight_capacity_bytes == doctest::Approx(1.5 * 1024 * 1024));
  CHECK(m.local_energy_pj_per_byte == 1.5);
  CHECK(m.offchip_energy_pj_per_byte == 120.0);
  CHECK(m.energy_calibration == 1.0);
  CHECK(m.local_latency_ns_per_64B == 10.0);
  CHECK(m.offchip_latency_ns_per_64B == 60.0);
  CHECK(m.compute_efficiency_gops_per_mw == 5.0);
  CHECK(m.peak_compute_gops == 100.0);
}

TEST_CASE("model: reports the byte offset of a syntax error") {
  try {
    parse_model_document("{\"schema_version\": 1,, }");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("syntax error at byte") != std::string::npos);
  }
}

TEST_CASE("model: rejects unknown fields instead of ignoring them") {
  std::string text = kMinimalConfig;
  text.insert(text.rfind('}'), R"(, "extra_field": 1)");
  CHECK_THROWS_AS(parse_model_document(text), ConfigError);

  std::string component_typo = kMinimalConfig;
  component_typo.replace(component_typo.find("ops_factor"), 10, "ops_facto r");
  CHECK_THROWS_AS(parse_model_document(component_typo), ConfigError);
}

TEST_CASE("model: rejects wrong schema version and missing sections") {
  std::string v2 = kMinimalConfig;
  v2.replace(v2.find("\"schema_version\": 1"), 19, "\"schema_version\": 2");
  CHECK_THROWS_AS(parse_model_document(v2), ConfigError);
  CHECK_THROWS_AS(parse_model_document("{\"schema_version\": 1}"), ConfigError);
  CHECK_THROWS_AS(parse_model_document("[]"), ConfigError);
}

TEST_CASE("model: validates ranges and cross-field invariants") {
  ModelSpec spec = testsupport::reference_document().spec;
  CHECK(validate(spec).ok());

  SUBCASE("empty component list") {
    spec.components.clear();
    CHECK_FALSE(validate(spec).ok());
  }
  SUBCASE("duplicate names") {
    spec.components[1].name = spec.components[0].name;
    CHECK_FALSE(validate(spec).ok());
  }
  SUBCASE("zero dense params") {
    spec.components[0].dense_params = 0;
    CHECK_FALSE(validate(spec).ok());
  }
  SUBCASE("min above dense") {
    spec.components[0].min_params = spec.components[0].dense_params + 1;
    CHECK_FALSE(validate(spec).ok());
  }
  SUBCASE("sparse overhead below one") {
    spec.components[0].sparse_overhead = 0.9;
    CHECK_FALSE(validate(spec).ok());
  }
  SUBCASE("chunk not a stride multiple") {
    spec.streaming.chunk_ms = 170.0;
    const ValidationReport report = validate(spec);
    CHECK_FALSE(report.ok());
    CHECK(report.to_string().find("multiple") != std::string::npos);
  }
  SUBCASE("local tier must be cheaper than off-chip") {
    spec.memory.local_energy_pj_per_byte = 150.0;
    CHECK_FALSE(validate(spec).ok());
  }
  SUBCASE("local tier must be faster than off-chip") {
    spec.memory.local_latency_ns_per_64B = 80.0;
    CHECK_FALSE(validate(spec).ok());
  }
  SUBCASE("negative token rate") {
    spec.streaming.token_rate_hz = -1.0;
    CHECK_FALSE(validate(spec).ok());
  }
}

TEST_CASE("model: live params must stay between floor and dense") {
  std::string text = kMinimalConfig;
  text.replace(text.find("\"dense_params\": 4000000"), 23,
               "\"dense_params\": 4000000, \"live_params\": 4000001");
  CHECK_THROWS_AS(parse_model_document(text), ConfigError);

  std::string below_floor = kMinimalConfig;
  below_floor.replace(below_floor.find("\"dense_params\": 8500000"), 23,
                      "\"dense_params\": 8500000, \"live_params\": 100");
  CHECK_THROWS_AS(parse_model_document(below_floor), ConfigError);
}

TEST_CASE("model: stored bytes apply the sparse overhead only when compressed") {
  ComponentSpec spec = testsupport::make_component("Joiner", 4'000'000);
  spec.sparse_overhead = 1.25;
  CHECK(stored_bytes(dense_state(spec)) == 4'000'000.0);
  CHECK(stored_bytes(ComponentState{spec, 800'000}) == doctest::Approx(1'000'000.0));

  spec.bytes_per_param = 0.5;
  CHECK(stored_bytes(dense_state(spec)) == 2'000'000.0);
}

TEST_CASE("model: serialize/parse round trip preserves the spec") {
  const ModelDocument doc = testsupport::reference_document();
  const ModelSpec parsed = parse_model_spec(serialize_model_spec(doc.spec));
  CHECK(parsed == doc.spec);

  ModelDocument with_utterance = doc;
  with_utterance.live_params[2] = 1'200'000;
  with_utterance.utterance = UtteranceSpec{160.0, 11.53, "regular", 12};
  const ModelDocument reparsed =
      parse_model_document(serialize_model_document(with_utterance));
  CHECK(reparsed.spec == with_utterance.spec);
  CHECK(reparsed.live_params == with_utterance.live_params);
  REQUIRE(reparsed.utterance.has_value());
  CHECK(*reparsed.utterance == *with_utterance.utterance);
}

TEST_CASE("model: utterance block validation") {
  std::string text = kMinimalConfig;
  text.insert(text.rfind('}'),
              R"(, "utterance": {"duration_s": 160, "token_rate_hz": 11.53,
                  "process": "regular", "seed": 12})");
  const ModelDocument doc = parse_model_document(text);
  REQUIRE(doc.utterance.has_value());
  CHECK(doc.utterance->duration_s == 160.0);
  CHECK(doc.utterance->seed == 12);

  std::string bad_process = text;
  bad_process.replace(bad_process.find("\"regular\""), 9, "\"uniform\"");
  CHECK_THROWS_AS(parse_model_document(bad_process), ConfigError);
}

TEST_CASE("model: component_states pairs specs with live counts") {
  ModelDocument doc = testsupport::reference_document();
  doc.live_params[2] = 1'200'000;
  const std::vector<ComponentState> states = component_states(doc);
  REQUIRE(states.size() == 3);
  CHECK(states[2].spec.name == kJoiner);
  CHECK(states[2].live_params == 1'200'000);
  CHECK(states[0].live_params == 60'700'000);
}
