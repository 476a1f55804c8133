#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "asrpower/energy.hpp"
#include "asrpower/errors.hpp"
#include "asrpower/io.hpp"
#include "asrpower/model.hpp"
#include "asrpower/placement.hpp"
#include "asrpower/planner.hpp"
#include "asrpower/report.hpp"
#include "asrpower/workload.hpp"

namespace {

using namespace asrpower;

struct CliOptions {
  std::string config_path;
  std::string points_path;
  std::string utterance_path;
  std::string out_dir;
  std::string placement = "fractional";
  std::optional<double> calibration;
  std::optional<std::uint64_t> seed;
  double target_mw = 0.0;
  double step_m = 0.4;
  std::vector<std::string> insensitive;
};

void emit(const CliOptions& opt, const std::string& report,
          const std::vector<std::pair<std::string, std::string>>& files) {
  std::cout << report;
  if (opt.out_dir.empty()) return;
  std::filesystem::create_directories(opt.out_dir);
  write_file((std::filesystem::path(opt.out_dir) / "report.txt").string(), report);
  for (const auto& [name, content] : files) {
    write_file((std::filesystem::path(opt.out_dir) / name).string(), content);
  }
}

ModelDocument load_config(const CliOptions& opt) {
  if (opt.config_path.empty()) throw ConfigError("--config is required");
  ModelDocument doc = parse_model_document(read_file(opt.config_path));
  if (opt.calibration) {
    if (*opt.calibration <= 0) throw ConfigError("--calibration must be positive");
    doc.spec.memory.energy_calibration = *opt.calibration;
  }
  return doc;
}

RunSettings base_settings(const char* command, const CliOptions& opt) {
  RunSettings settings;
  settings.add("command", command);
  if (!opt.config_path.empty()) settings.add("config", opt.config_path);
  return settings;
}

int cmd_analyze(const CliOptions& opt) {
  const ModelDocument doc = load_config(opt);
  const PlacementMode mode = parse_placement_mode(opt.placement);
  const std::vector<ComponentState> states = component_states(doc);
  const InvocationProfile profile = invocation_profile(doc.spec.streaming);
  const std::vector<double> hz = component_frequencies(doc.spec.components, profile);
  const Placement placement =
      allocate_local(states, hz, doc.spec.memory.local_weight_capacity_bytes, mode);
  const PowerBreakdown breakdown = total_power(states, hz, placement, doc.spec.memory);
  const RtfEstimate rtf = estimate_rtf(states, hz, placement, doc.spec.memory);

  RunSettings settings = base_settings("analyze", opt);
  settings.add("placement", to_string(mode));
  settings.add("calibration", format_fixed(doc.spec.memory.energy_calibration, 4));

  emit(opt, render_analyze_report(doc, settings, profile, breakdown, placement, rtf),
       {{"power.csv", power_breakdown_csv(breakdown)}});
  return 0;
}

int cmd_fit(const CliOptions& opt) {
  if (opt.points_path.empty()) throw ConfigError("--points is required");
  const std::vector<WerPointRow> rows = parse_points_csv(read_file(opt.points_path));
  const CurveSet curves = fit_curves(rows);

  double min_size = rows.front().point.size_millions;
  double max_size = min_size;
  for (const auto& row : rows) {
    min_size = std::min(min_size, row.point.size_millions);
    max_size = std::max(max_size, row.point.size_millions);
  }

  RunSettings settings = base_settings("fit", opt);
  settings.add("points", opt.points_path);

  emit(opt, render_fit_report(settings, curves),
       {{"curves.csv", curves_csv(curves)},
        {"predictions.csv", predictions_csv(curves, min_size, max_size, 50)}});
  return 0;
}

int cmd_plan(const CliOptions& opt) {
  const ModelDocument doc = load_config(opt);
  if (opt.points_path.empty()) throw ConfigError("--points is required");
  if (opt.target_mw <= 0) throw ConfigError("--target-mw must be positive");
  if (opt.step_m <= 0) throw ConfigError("--step-m must be positive");
  const PlacementMode mode = parse_placement_mode(opt.placement);

  CurveSet curves = fit_curves(parse_points_csv(read_file(opt.points_path)));
  for (const std::string& name : opt.insensitive) {
    if (curves.contains(name)) {
      throw ConfigError("component '" + name +
                        "' has fitted curves and cannot be marked insensitive");
    }
    curves[name].accuracy_insensitive = true;
  }

  const std::vector<ComponentState> states = component_states(doc);
  const InvocationProfile profile = invocation_profile(doc.spec.streaming);
  const std::vector<double> hz = component_frequencies(doc.spec.components, profile);
  const CompressionPlan plan = plan_compression(states, hz, curves, opt.target_mw,
                                                opt.step_m, doc.spec.memory, mode);

  RunSettings settings = base_settings("plan", opt);
  settings.add("points", opt.points_path);
  settings.add("target_mw", format_fixed(opt.target_mw, 2));
  settings.add("step_millions", format_fixed(opt.step_m, 3));
  settings.add("placement", to_string(mode));
  settings.add("calibration", format_fixed(doc.spec.memory.energy_calibration, 4));
  for (const std::string& name : opt.insensitive) {
    settings.add("accuracy_insensitive", name);
  }

  emit(opt, render_plan_report(doc, settings, plan), {{"plan.csv", plan_csv(plan)}});
  return 0;
}

int cmd_simulate(const CliOptions& opt) {
  const ModelDocument doc = load_config(opt);

  UtteranceProfile utterance;
  std::uint64_t seed = opt.seed.value_or(0);
  std::string source;
  if (!opt.utterance_path.empty()) {
    utterance = parse_utterance_csv(read_file(opt.utterance_path));
    source = opt.utterance_path;
  } else if (doc.utterance) {
    UtteranceSpec spec = *doc.utterance;
    if (opt.seed) spec.seed = *opt.seed;
    seed = spec.seed;
    utterance = make_utterance(spec);
    source = "config";
  } else {
    throw ConfigError("no utterance: pass --utterance or add one to the config");
  }

  const InvocationProfile profile = invocation_profile(doc.spec.streaming);
  const InvocationCounts counts = simulate_decode(doc.spec.streaming, utterance, seed);

  RunSettings settings = base_settings("simulate", opt);
  settings.add("utterance", source);
  settings.add("seed", std::to_string(seed));

  emit(opt, render_simulate_report(doc, settings, utterance, profile, counts),
       {{"counts.csv", counts_csv(counts, utterance.duration_s, profile)}});
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"power, traffic, and compression planning for streaming transducer ASR"};
  app.require_subcommand(1);
  CliOptions opt;

  CLI::App* analyze = app.add_subcommand("analyze", "power breakdown and RTF estimate");
  analyze->add_option("--config", opt.config_path, "model config JSON");
  analyze->add_option("--placement", opt.placement, "fractional|whole");
  analyze->add_option("--calibration", opt.calibration, "energy calibration override");
  analyze->add_option("--out", opt.out_dir, "output directory");

  CLI::App* fit = app.add_subcommand("fit", "fit accuracy curves to size/WER points");
  fit->add_option("--points", opt.points_path, "points CSV");
  fit->add_option("--out", opt.out_dir, "output directory");

  CLI::App* plan = app.add_subcommand("plan", "greedy compression schedule");
  plan->add_option("--config", opt.config_path, "model config JSON");
  plan->add_option("--points", opt.points_path, "points CSV");
  plan->add_option("--target-mw", opt.target_mw, "power reduction target (mW)");
  plan->add_option("--step-m", opt.step_m, "step size in millions of params");
  plan->add_option("--placement", opt.placement, "fractional|whole");
  plan->add_option("--calibration", opt.calibration, "energy calibration override");
  plan->add_option("--insensitive", opt.insensitive,
                   "component treated as accuracy-insensitive (repeatable)");
  plan->add_option("--out", opt.out_dir, "output directory");

  CLI::App* simulate = app.add_subcommand("simulate", "event-level decode simulation");
  simulate->add_option("--config", opt.config_path, "model config JSON");
  simulate->add_option("--utterance", opt.utterance_path, "utterance CSV");
  simulate->add_option("--seed", opt.seed, "random seed");
  simulate->add_option("--out", opt.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (analyze->parsed()) return cmd_analyze(opt);
  if (fit->parsed()) return cmd_fit(opt);
  if (plan->parsed()) return cmd_plan(opt);
  return cmd_simulate(opt);
  (void)simulate;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
