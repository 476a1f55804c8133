#include "asrpower/report.hpp"

#include <sstream>

namespace asrpower {

void RunSettings::add(std::string key, std::string value) {
  entries.emplace_back(std::move(key), std::move(value));
}

namespace {

void render_settings(std::ostringstream& out, const RunSettings& settings) {
  out << "settings:\n";
  for (const auto& [key, value] : settings.entries) {
    out << "  " << key << ": " << value << "\n";
  }
}

void render_components(std::ostringstream& out, const ModelDocument& doc) {
  out << "components:\n";
  for (std::size_t i = 0; i < doc.spec.components.size(); ++i) {
    const auto& c = doc.spec.components[i];
    out << "  " << c.name << ": live " << doc.live_params[i] << " of " << c.dense_params
        << " params, " << format_fixed(c.bytes_per_param, 2) << " B/param, ops_factor "
        << format_fixed(c.ops_factor, 3) << ", floor " << c.min_params;
    if (c.sparse_overhead != 1.0) {
      out << ", sparse_overhead " << format_fixed(c.sparse_overhead, 3);
    }
    out << "\n";
  }
}

void render_placement(std::ostringstream& out, const Placement& placement) {
  out << "placement (" << to_string(placement.mode) << "):\n";
  for (const auto& e : placement.entries) {
    out << "  " << e.component << ": local " << format_fixed(e.local_bytes, 0)
        << " B, offchip " << format_fixed(e.offchip_bytes, 0) << " B\n";
  }
  out << "  local bytes used: " << format_fixed(placement.local_bytes_total(), 0)
      << "\n";
}

void render_streaming(std::ostringstream& out, const StreamingParams& s) {
  out << "streaming:\n";
  out << "  input stride: " << format_fixed(s.input_stride_ms, 2) << " ms, chunk: "
      << format_fixed(s.chunk_ms, 2) << " ms\n";
  out << "  token rate: " << format_fixed(s.token_rate_hz, 2)
      << " Hz, joiner beta: " << format_fixed(s.joiner_beta, 6) << "\n";
}

void render_memory(std::ostringstream& out, const MemoryConfig& m) {
  out << "memory system:\n";
  out << "  local capacity: " << format_fixed(m.local_weight_capacity_bytes, 0)
      << " B\n";
  out << "  energy: local " << format_fixed(m.local_energy_pj_per_byte, 2)
      << " pJ/B, offchip " << format_fixed(m.offchip_energy_pj_per_byte, 2)
      << " pJ/B, calibration " << format_fixed(m.energy_calibration, 4) << "\n";
  out << "  latency: local " << format_fixed(m.local_latency_ns_per_64B, 2)
      << " ns/64B, offchip " << format_fixed(m.offchip_latency_ns_per_64B, 2)
      << " ns/64B\n";
  out << "  compute: " << format_fixed(m.compute_efficiency_gops_per_mw, 2)
      << " GOPS/mW, peak " << format_fixed(m.peak_compute_gops, 2) << " GOPS\n";
}

// The three sections that together restate the resolved input config.
void render_config(std::ostringstream& out, const ModelDocument& doc) {
  render_components(out, doc);
  render_streaming(out, doc.spec.streaming);
  render_memory(out, doc.spec.memory);
}

void render_profile(std::ostringstream& out, const InvocationProfile& profile) {
  out << "invocation rates:\n";
  out << "  frame_rate: " << format_fixed(profile.frame_rate_hz, 2) << " Hz\n";
  out << "  encoder: " << format_fixed(profile.encoder_hz, 2) << " Hz\n";
  out << "  predictor: " << format_fixed(profile.predictor_hz, 2) << " Hz\n";
  out << "  joiner: " << format_fixed(profile.joiner_hz, 2) << " Hz\n";
}

}  // namespace

std::string render_analyze_report(const ModelDocument& doc, const RunSettings& settings,
                                  const InvocationProfile& profile,
                                  const PowerBreakdown& breakdown,
                                  const Placement& placement, const RtfEstimate& rtf) {
  std::ostringstream out;
  out << "power analysis\n==============\n";
  render_settings(out, settings);
  render_config(out, doc);
  render_profile(out, profile);
  render_placement(out, placement);
  out << "power:\n";
  for (const auto& c : breakdown.components) {
    out << "  " << c.component << ": memory " << format_fixed(c.memory_mw, 2)
        << " mW, compute " << format_fixed(c.compute_mw, 2) << " mW\n";
  }
  out << "  memory total: " << format_fixed(breakdown.memory_mw_total, 2) << " mW\n";
  out << "  compute total: " << format_fixed(breakdown.compute_mw_total, 2) << " mW\n";
  out << "  total: " << format_fixed(breakdown.total_mw, 2) << " mW\n";
  out << "  compute share: " << format_fixed(breakdown.compute_share * 100.0, 2)
      << "% (below 1%: " << (breakdown.compute_below_one_percent ? "yes" : "no")
      << ")\n";
  out << "rtf estimate (serialized upper bound):\n";
  out << "  memory term: " << format_fixed(rtf.memory_term, 4) << "\n";
  out << "  compute term: " << format_fixed(rtf.compute_term, 4) << "\n";
  out << "  total: " << format_fixed(rtf.total(), 4) << "\n";
  return out.str();
}

std::string render_fit_report(const RunSettings& settings, const CurveSet& curves) {
  std::ostringstream out;
  out << "accuracy curve fit\n==================\n";
  render_settings(out, settings);
  out << "curves (wer = exp(a*size + b) + c, size in millions of params):\n";
  for (const auto& [component, group] : curves) {
    if (group.accuracy_insensitive) {
      out << "  " << component << ": accuracy-insensitive\n";
      continue;
    }
    for (const auto& [dataset, curve] : group.by_dataset) {
      out << "  " << component << "/" << dataset << ": a=" << format_fixed(curve.a, 6)
          << " b=" << format_fixed(curve.b, 6) << " c=" << format_fixed(curve.c, 6)
          << " adj_r2=" << format_fixed(curve.adj_r2, 4) << " n=" << curve.n_points
          << (curve.converged ? "" : " (not converged)") << "\n";
    }
  }
  return out.str();
}

std::string render_plan_report(const ModelDocument& doc, const RunSettings& settings,
                               const CompressionPlan& plan) {
  std::ostringstream out;
  out << "compression plan\n================\n";
  render_settings(out, settings);
  render_config(out, doc);
  out << "baseline: " << format_fixed(plan.baseline_mw, 2) << " mW";
  for (const auto& [dataset, wer] : plan.baseline_wer) {
    out << ", wer[" << dataset << "] " << format_fixed(wer, 3);
  }
  out << "\n";
  out << "steps:\n";
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const auto& step = plan.steps[i];
    out << "  " << (i + 1) << ". " << step.component << " -" << step.params_removed
        << " params -> " << step.live_params << " live, total "
        << format_fixed(step.total_mw, 2) << " mW";
    for (const auto& [dataset, wer] : step.predicted_wer) {
      out << ", wer[" << dataset << "] " << format_fixed(wer, 3);
    }
    out << "\n";
  }
  out << "target reduction: " << format_fixed(plan.target_mw_reduction, 2) << " mW\n";
  out << "achieved reduction: " << format_fixed(plan.achieved_mw_reduction, 2)
      << " mW\n";
  out << "termination: " << plan.termination_reason << "\n";
  return out.str();
}

std::string render_simulate_report(const ModelDocument& doc, const RunSettings& settings,
                                   const UtteranceProfile& utterance,
                                   const InvocationProfile& profile,
                                   const InvocationCounts& counts) {
  std::ostringstream out;
  out << "decode simulation\n=================\n";
  render_settings(out, settings);
  render_config(out, doc);
  out << "utterance: " << format_fixed(utterance.duration_s, 3) << " s, "
      << utterance.token_times.size() << " tokens\n";
  render_profile(out, profile);
  out << "counts (measured vs analytic):\n";
  const auto row = [&](const char* name, std::uint64_t count, double analytic_hz) {
    const double measured = static_cast<double>(count) / utterance.duration_s;
    const double rel =
        analytic_hz > 0 ? (measured - analytic_hz) / analytic_hz * 100.0 : 0.0;
    out << "  " << name << ": " << count << " calls, " << format_fixed(measured, 2)
        << " Hz vs " << format_fixed(analytic_hz, 2) << " Hz ("
        << format_fixed(rel, 2) << "%)\n";
  };
  row("encoder", counts.encoder, profile.encoder_hz);
  row("predictor", counts.predictor, profile.predictor_hz);
  row("joiner", counts.joiner, profile.joiner_hz);
  row("frames", counts.frames, profile.frame_rate_hz);
  return out.str();
}

}  // namespace asrpower
