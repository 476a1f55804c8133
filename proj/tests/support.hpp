#pragma once

#include <string>

#include "asrpower/model.hpp"
#include "asrpower/workload.hpp"

namespace testsupport {

using namespace asrpower;

inline ComponentSpec make_component(std::string name, std::uint64_t dense,
                                    double ops_factor = 1.0, std::uint64_t min = 0) {
  ComponentSpec spec;
  spec.name = std::move(name);
  spec.dense_params = dense;
  spec.ops_factor = ops_factor;
  spec.min_params = min;
  return spec;
}

// Calibrated from the published per-component invocation rates.
inline double reference_joiner_beta() {
  return calibrate_joiner_beta(113.5, 25.0, 11.53);
}

// Three-component streaming transducer with the published sizes and rates.
// ops_factor values invert the published compute-power rows; calibration
// 1.049 is the fitted ratio between measured and modeled memory power.
inline ModelDocument reference_document(double calibration = 1.049) {
  ModelDocument doc;
  doc.spec.components = {
      make_component(std::string(kEncoder), 60'700'000, 5.3),
      make_component(std::string(kPredictor), 8'500'000, 0.765, 850'000),
      make_component(std::string(kJoiner), 4'000'000, 1.0),
  };
  doc.live_params = {60'700'000, 8'500'000, 4'000'000};
  doc.spec.streaming.input_stride_ms = 40.0;
  doc.spec.streaming.chunk_ms = 160.0;
  doc.spec.streaming.token_rate_hz = 11.53;
  doc.spec.streaming.joiner_beta = reference_joiner_beta();
  doc.spec.memory.energy_calibration = calibration;
  return doc;
}

}  // namespace testsupport
