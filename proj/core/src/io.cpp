#include "asrpower/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "asrpower/errors.hpp"

namespace asrpower {

std::string format_fixed(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
  std::string out = buffer;
  // Normalize negative zero so formatting is a pure function of the value.
  if (out.find_first_not_of("-0.") == std::string::npos && out[0] == '-') {
    out.erase(0, 1);
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

std::vector<std::vector<std::string>> parse_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    rows.push_back(split_row(trimmed));
  }
  return rows;
}

double parse_number(const std::string& field, std::size_t line) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(field, &used);
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line) + ": '" + field +
                      "' is not a number");
  }
  if (used != field.size()) {
    throw ConfigError("line " + std::to_string(line) + ": '" + field +
                      "' is not a number");
  }
  return value;
}

std::size_t column_index(const std::vector<std::string>& header,
                         std::initializer_list<const char*> names, bool required) {
  for (const char* name : names) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it != header.end()) return static_cast<std::size_t>(it - header.begin());
  }
  if (!required) return header.size();
  throw ConfigError("points file is missing column '" + std::string(*names.begin()) +
                    "'");
}

}  // namespace

std::vector<WerPointRow> parse_points_csv(const std::string& text) {
  const auto rows = parse_rows(text);
  if (rows.empty()) throw ConfigError("points file is empty");
  const auto& header = rows.front();
  const std::size_t component_col = column_index(header, {"component"}, true);
  const std::size_t size_col =
      column_index(header, {"size_millions", "live_params_millions"}, true);
  const std::size_t wer_col = column_index(header, {"wer_percent", "wer"}, true);
  const std::size_t dataset_col = column_index(header, {"dataset_tag", "dataset"}, false);

  std::vector<WerPointRow> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::size_t line = r + 1;
    if (row.size() <= std::max({component_col, size_col, wer_col})) {
      throw ConfigError("line " + std::to_string(line) + ": too few fields");
    }
    WerPointRow point_row;
    point_row.component = row[component_col];
    if (point_row.component.empty()) {
      throw ConfigError("line " + std::to_string(line) + ": empty component");
    }
    point_row.dataset = dataset_col < row.size() ? row[dataset_col] : "";
    if (point_row.dataset.empty()) point_row.dataset = "default";
    point_row.point.size_millions = parse_number(row[size_col], line);
    point_row.point.wer_percent = parse_number(row[wer_col], line);
    out.push_back(std::move(point_row));
  }
  if (out.empty()) throw ConfigError("points file has no data rows");
  return out;
}

CurveSet fit_curves(const std::vector<WerPointRow>& rows) {
  std::map<std::string, std::map<std::string, std::vector<SizeWerPoint>>> groups;
  for (const auto& row : rows) {
    groups[row.component][row.dataset].push_back(row.point);
  }
  CurveSet curves;
  for (const auto& [component, by_dataset] : groups) {
    for (const auto& [dataset, points] : by_dataset) {
      try {
        curves[component].by_dataset[dataset] = fit_exponential(points);
      } catch (const FitError& e) {
        throw FitError(component + "/" + dataset + ": " + e.what());
      }
    }
  }
  return curves;
}

UtteranceProfile parse_utterance_csv(const std::string& text) {
  const auto rows = parse_rows(text);
  if (rows.empty()) throw ConfigError("utterance file is empty");

  UtteranceProfile u;
  bool have_duration = false;
  std::size_t start = 0;
  if (rows[0].size() == 2 && rows[0][0] == "field" && rows[0][1] == "value") start = 1;
  for (std::size_t r = start; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::size_t line = r + 1;
    if (row.size() != 2) {
      throw ConfigError("line " + std::to_string(line) +
                        ": expected 'field,value' rows");
    }
    const double value = parse_number(row[1], line);
    if (row[0] == "duration_s") {
      if (have_duration) {
        throw ConfigError("line " + std::to_string(line) + ": duplicate duration_s");
      }
      if (value <= 0) {
        throw ConfigError("line " + std::to_string(line) + ": duration must be positive");
      }
      u.duration_s = value;
      have_duration = true;
    } else if (row[0] == "token_s") {
      u.token_times.push_back(value);
    } else {
      throw ConfigError("line " + std::to_string(line) + ": unknown field '" + row[0] +
                        "'");
    }
  }
  if (!have_duration) throw ConfigError("utterance file has no duration_s row");
  double prev = -1.0;
  for (double t : u.token_times) {
    if (t < 0 || t > u.duration_s || t <= prev) {
      throw ConfigError("token times must be strictly increasing within [0, duration]");
    }
    prev = t;
  }
  return u;
}

std::string utterance_csv(const UtteranceProfile& u) {
  std::ostringstream out;
  out << "field,value\n";
  out << "duration_s," << format_fixed(u.duration_s, 6) << "\n";
  for (double t : u.token_times) out << "token_s," << format_fixed(t, 6) << "\n";
  return out.str();
}

PruneState parse_prune_state_csv(const std::string& text) {
  const auto rows = parse_rows(text);
  if (rows.size() < 2) throw ConfigError("prune-state file has no data rows");
  const auto& header = rows.front();
  if (header != std::vector<std::string>{"index", "value", "grad_sq", "live"}) {
    throw ConfigError("prune-state file must start with 'index,value,grad_sq,live'");
  }
  PruneState state;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::size_t line = r + 1;
    if (row.size() != 4) {
      throw ConfigError("line " + std::to_string(line) + ": expected 4 fields");
    }
    const double index = parse_number(row[0], line);
    if (index != static_cast<double>(r - 1)) {
      throw ConfigError("line " + std::to_string(line) + ": indices must be sequential");
    }
    state.values.push_back(parse_number(row[1], line));
    state.grad_sq.push_back(parse_number(row[2], line));
    if (row[3] == "0") {
      state.live.push_back(false);
    } else if (row[3] == "1") {
      state.live.push_back(true);
    } else {
      throw ConfigError("line " + std::to_string(line) + ": live must be 0 or 1");
    }
  }
  return state;
}

std::string prune_state_csv(const PruneState& state) {
  std::ostringstream out;
  out << "index,value,grad_sq,live\n";
  char buffer[96];
  for (std::size_t i = 0; i < state.values.size(); ++i) {
    std::snprintf(buffer, sizeof(buffer), "%zu,%.17g,%.17g,%d", i, state.values[i],
                  state.grad_sq[i], state.live[i] ? 1 : 0);
    out << buffer << "\n";
  }
  return out.str();
}

std::string power_breakdown_csv(const PowerBreakdown& breakdown) {
  std::ostringstream out;
  out << "component,memory_mw,compute_mw,local_Bps,offchip_Bps\n";
  for (const auto& c : breakdown.components) {
    out << c.component << "," << format_fixed(c.memory_mw, 2) << ","
        << format_fixed(c.compute_mw, 2) << ","
        << format_fixed(c.traffic.local_bytes_per_s, 0) << ","
        << format_fixed(c.traffic.offchip_bytes_per_s, 0) << "\n";
  }
  out << "total," << format_fixed(breakdown.memory_mw_total, 2) << ","
      << format_fixed(breakdown.compute_mw_total, 2) << ","
      << format_fixed(breakdown.traffic_total.local_bytes_per_s, 0) << ","
      << format_fixed(breakdown.traffic_total.offchip_bytes_per_s, 0) << "\n";
  return out.str();
}

std::string curves_csv(const CurveSet& curves) {
  std::ostringstream out;
  out << "component,dataset,a,b,c,adj_r2,n_points,converged\n";
  for (const auto& [component, group] : curves) {
    if (group.accuracy_insensitive) {
      out << component << ",,,,,,," << "insensitive\n";
      continue;
    }
    for (const auto& [dataset, curve] : group.by_dataset) {
      out << component << "," << dataset << "," << format_fixed(curve.a, 6) << ","
          << format_fixed(curve.b, 6) << "," << format_fixed(curve.c, 6) << ","
          << format_fixed(curve.adj_r2, 4) << "," << curve.n_points << ","
          << (curve.converged ? 1 : 0) << "\n";
    }
  }
  return out.str();
}

std::string predictions_csv(const CurveSet& curves, double min_size_millions,
                            double max_size_millions, int grid_points) {
  if (grid_points < 2) throw ConfigError("prediction grid needs at least 2 points");
  if (!(min_size_millions > 0) || max_size_millions < min_size_millions) {
    throw ConfigError("prediction grid range must be positive and ordered");
  }
  std::ostringstream out;
  out << "component,dataset,size_millions,wer_percent\n";
  for (const auto& [component, group] : curves) {
    if (group.accuracy_insensitive) continue;
    for (const auto& [dataset, curve] : group.by_dataset) {
      for (int i = 0; i < grid_points; ++i) {
        const double size = min_size_millions + (max_size_millions - min_size_millions) *
                                                    i / (grid_points - 1);
        out << component << "," << dataset << "," << format_fixed(size, 3) << ","
            << format_fixed(predict_wer(curve, size), 3) << "\n";
      }
    }
  }
  return out.str();
}

std::string plan_csv(const CompressionPlan& plan) {
  std::ostringstream out;
  out << "step,component,params_removed,live_params,total_mw";
  for (const auto& [dataset, wer] : plan.baseline_wer) {
    (void)wer;
    out << ",wer_" << dataset;
  }
  out << "\n";
  out << "0,baseline,0,,"
      << format_fixed(plan.baseline_mw, 2);
  for (const auto& [dataset, wer] : plan.baseline_wer) {
    (void)dataset;
    out << "," << format_fixed(wer, 3);
  }
  out << "\n";
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const auto& step = plan.steps[i];
    out << (i + 1) << "," << step.component << "," << step.params_removed << ","
        << step.live_params << "," << format_fixed(step.total_mw, 2);
    for (const auto& [dataset, wer] : plan.baseline_wer) {
      const auto it = step.predicted_wer.find(dataset);
      out << "," << format_fixed(it != step.predicted_wer.end() ? it->second : 0.0, 3);
    }
    out << "\n";
  }
  return out.str();
}

std::string counts_csv(const InvocationCounts& counts, double duration_s,
                       const InvocationProfile& profile) {
  std::ostringstream out;
  out << "component,count,measured_hz,analytic_hz,rel_error_percent\n";
  const auto row = [&](const char* name, std::uint64_t count, double analytic_hz) {
    const double measured = static_cast<double>(count) / duration_s;
    const double rel =
        analytic_hz > 0 ? (measured - analytic_hz) / analytic_hz * 100.0 : 0.0;
    out << name << "," << count << "," << format_fixed(measured, 2) << ","
        << format_fixed(analytic_hz, 2) << "," << format_fixed(rel, 2) << "\n";
  };
  row("encoder", counts.encoder, profile.encoder_hz);
  row("predictor", counts.predictor, profile.predictor_hz);
  row("joiner", counts.joiner, profile.joiner_hz);
  row("frames", counts.frames, profile.frame_rate_hz);
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file '" + path + "'");
  out << content;
  if (!out.flush()) throw ConfigError("cannot write file '" + path + "'");
}

}  // namespace asrpower
