// Copyright 2026 The Surgeseek Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "surgeseek/averaging_core.h"
#include "surgeseek/dither_control.h"
#include "surgeseek/passivity.h"
#include "surgeseek/runner.h"
#include "surgeseek/scenario.h"
#include "surgeseek/trajectory_io.h"

namespace surgeseek::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class CommandError : public std::runtime_error {
 public:
  CommandError(ExitCode code, std::string kind, const std::string& message)
      : std::runtime_error(message), code_(code), kind_(std::move(kind)) {}
  ExitCode code() const { return code_; }
  const std::string& kind() const { return kind_; }

 private:
  ExitCode code_;
  std::string kind_;
};

std::string one_line(std::string text) {
  for (char& c : text) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return text;
}

json number_or_string(double value) {
  if (std::isfinite(value)) return value;
  return value > 0 ? "inf" : (value < 0 ? "-inf" : "nan");
}

Scenario load(const std::string& path) {
  try {
    return load_scenario(path);
  } catch (const ScenarioError& e) {
    throw CommandError(kBadScenario, "invalid_scenario", e.what());
  }
}

fs::path prepare_output_dir(const Scenario& scenario) {
  const fs::path dir = resolve_output_dir(scenario);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw CommandError(kIoFailed, "io_error",
                       "cannot create output directory '" + dir.string() + "'");
  }
  return dir;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw CommandError(kIoFailed, "io_error", "cannot write '" + path.string() + "'");
  }
  return out;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out = open_output(path);
  out << content;
  if (!out) throw CommandError(kIoFailed, "io_error", "write failed: " + path.string());
}

json thresholds_json() {
  return {{"convergence_radius", kConvergenceRadius},
          {"final_error_threshold_epsilon_0.1", kFinalErrorThresholdCoarse},
          {"final_error_threshold_epsilon_0.05", kFinalErrorThresholdFine},
          {"deviation_ratio_band", {kDeviationRatioLow, kDeviationRatioHigh}},
          {"note", "chosen operationalizations of the O(epsilon) neighbourhood"}};
}

void write_metadata(const fs::path& path, const Scenario& scenario,
                    const std::string& kind, const Trajectory& trajectory,
                    const std::vector<std::string>& warnings) {
  if (!scenario.outputs.write_metadata) return;
  json meta;
  meta["kind"] = kind;
  meta["scenario"] = scenario_to_yaml(scenario);
  meta["warnings"] = warnings;
  meta["thresholds"] = thresholds_json();
  meta["steps"] = trajectory.size() > 0 ? trajectory.size() - 1 : 0;
  meta["step"] = trajectory.step();
  if (scenario.vehicle.damping_is_diagonal()) {
    meta["c_hat"] = number_or_string(c_hat_bound(scenario.vehicle));
  }
  meta["passive_at_c"] = monotonicity_check(scenario.vehicle, scenario.gains.c);
  write_file(path, meta.dump(2) + "\n");
}

void write_trajectory(const fs::path& path, const Trajectory& trajectory) {
  std::ofstream out = open_output(path);
  write_trajectory_csv(out, trajectory);
  if (!out) throw CommandError(kIoFailed, "io_error", "write failed: " + path.string());
}

std::string format_metrics(const RunMetrics& m) {
  std::ostringstream line;
  line << "final_error=" << format_number(m.final_error) << " conv_time_r="
       << (m.convergence_time ? format_number(*m.convergence_time) : "never")
       << " path_length=" << format_number(m.path_length)
       << " sup_deviation=" << format_number(m.sup_deviation);
  return line.str();
}

void report_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const std::string& w : warnings) err << "warning: " << one_line(w) << '\n';
}

Trajectory checked_run(Trajectory (*runner)(const Scenario&), const Scenario& s) {
  try {
    return runner(s);
  } catch (const IntegrationError& e) {
    throw CommandError(kRunFailed, "integration_failed", e.what());
  }
}

int cmd_simulate(const std::string& file, std::ostream& out, std::ostream& err) {
  const Scenario scenario = load(file);
  const auto warnings = scenario.check();
  report_warnings(warnings, err);
  const fs::path dir = prepare_output_dir(scenario);
  const Trajectory full = checked_run(run_full, scenario);
  write_trajectory(dir / "full.csv", full);
  write_metadata(dir / "full.meta.json", scenario, "full", full, warnings);
  out << "simulate: wrote " << (dir / "full.csv").string() << " rows=" << full.size()
      << ' ' << format_metrics(run_metrics(full, metrics_options(scenario))) << '\n';
  return kOk;
}

int cmd_average(const std::string& file, std::ostream& out, std::ostream& err) {
  const Scenario scenario = load(file);
  const auto warnings = scenario.check();
  report_warnings(warnings, err);
  const fs::path dir = prepare_output_dir(scenario);
  const Trajectory averaged = checked_run(run_averaged, scenario);
  write_trajectory(dir / "averaged.csv", averaged);
  write_metadata(dir / "averaged.meta.json", scenario, "averaged", averaged, warnings);
  out << "average: wrote " << (dir / "averaged.csv").string()
      << " rows=" << averaged.size() << ' '
      << format_metrics(run_metrics(averaged, metrics_options(scenario))) << '\n';
  return kOk;
}

int cmd_compare(const std::string& file, double deviation_horizon, std::ostream& out,
                std::ostream& err) {
  const Scenario scenario = load(file);
  const auto warnings = scenario.check();
  report_warnings(warnings, err);
  const fs::path dir = prepare_output_dir(scenario);
  const Trajectory full = checked_run(run_full, scenario);
  const Trajectory averaged = checked_run(run_averaged, scenario);
  MetricsOptions options = metrics_options(scenario);
  options.deviation_horizon = deviation_horizon;
  SweepRow row;
  row.value = scenario.gains.epsilon;
  row.metrics = compare(full, averaged, options);
  write_trajectory(dir / "full.csv", full);
  write_trajectory(dir / "averaged.csv", averaged);
  write_metadata(dir / "full.meta.json", scenario, "full", full, warnings);
  write_metadata(dir / "averaged.meta.json", scenario, "averaged", averaged, warnings);
  {
    std::ofstream csv = open_output(dir / "metrics.csv");
    write_metrics_csv(csv, std::span<const SweepRow>(&row, 1));
  }
  out << "compare: " << format_metrics(row.metrics) << '\n';
  return kOk;
}

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> values;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CommandError(kUsage, "bad_arguments", "not a number in --values: '" + item + "'");
    }
  }
  if (values.empty()) throw CommandError(kUsage, "bad_arguments", "--values is empty");
  return values;
}

int cmd_sweep(const std::string& file, const std::string& axis_name,
              const std::string& values_list, std::ostream& out, std::ostream& err) {
  const Scenario scenario = load(file);
  SweepAxis axis;
  try {
    axis = parse_sweep_axis(axis_name);
  } catch (const std::invalid_argument& e) {
    throw CommandError(kUsage, "bad_arguments", e.what());
  }
  const std::vector<double> values = parse_values(values_list);
  report_warnings(scenario.check(), err);
  const fs::path dir = prepare_output_dir(scenario);
  const std::string stem = "sweep_" + sweep_axis_name(axis);

  SweepOptions options;
  options.on_run = [&](std::size_t index, const Scenario& s, const Trajectory& full) {
    const fs::path path = dir / (stem + "_" + std::to_string(index) + ".csv");
    std::ofstream csv(path, std::ios::binary | std::ios::trunc);
    write_trajectory_csv(csv, full);
    if (!csv) throw std::runtime_error("cannot write " + path.string());
    (void)s;
  };
  const std::vector<SweepRow> rows = sweep(scenario, axis, values, options);
  {
    std::ofstream csv = open_output(dir / (stem + ".csv"));
    write_metrics_csv(csv, rows);
  }
  std::size_t failures = 0;
  for (const SweepRow& row : rows) {
    out << sweep_axis_name(axis) << '=' << format_number(row.value) << ' '
        << format_metrics(row.metrics) << " status=" << one_line(row.status) << '\n';
    if (row.status != "ok") ++failures;
  }
  if (axis == SweepAxis::kEpsilon) {
    double best = -1.0;
    for (const SweepRow& row : rows) {
      if (row.status == "ok" && row.metrics.convergence_time && row.value > best) {
        best = row.value;
      }
    }
    out << "largest_converging_epsilon="
        << (best > 0.0 ? format_number(best) : std::string("none")) << '\n';
  }
  out << "sweep: wrote " << (dir / (stem + ".csv")).string() << " runs=" << rows.size()
      << " failed=" << failures << '\n';
  return kOk;
}

int cmd_validate_dither(const std::string& signal, double period, double tol,
                        std::ostream& out) {
  Dither d;
  if (signal == "cos") {
    d = cosine_dither();
  } else if (signal == "sin") {
    d = sine_dither();
  } else if (signal == "const") {
    d = constant_dither();
  } else {
    throw CommandError(kUsage, "bad_arguments",
                       "--signal must be cos, sin or const (got '" + signal + "')");
  }
  if (!(period > 0.0)) throw CommandError(kUsage, "bad_arguments", "--period must be > 0");
  const DitherValidation v = validate_dither(d.w, period, tol);
  out << "signal=" << signal << " period=" << format_number(period)
      << " mean_residual=" << format_number(v.mean_residual)
      << " iterated_mean_residual=" << format_number(v.iterated_mean_residual)
      << " converged=" << (v.converged ? "true" : "false")
      << " passed=" << (v.passed ? "true" : "false") << '\n';
  if (!v.passed) {
    throw CommandError(kCheckFailed, "inadmissible_dither",
                       "signal '" + signal + "' violates the zero-mean conditions");
  }
  return kOk;
}

int cmd_passivity(const std::string& file, std::optional<double> c_override,
                  std::ostream& out, std::ostream& err) {
  Scenario scenario = load(file);
  if (c_override) scenario.gains.c = *c_override;
  std::vector<std::string> warnings;
  try {
    warnings = scenario.check();
  } catch (const ScenarioError& e) {
    throw CommandError(kBadScenario, "invalid_scenario", e.what());
  }
  report_warnings(warnings, err);
  const double c = scenario.gains.c;
  const SteadyState steady = steady_state_for_torque(scenario.vehicle, c);
  const bool monotone = monotonicity_check(scenario.vehicle, c);
  out << "c=" << format_number(c) << " v_star=(" << format_number(steady.v_star.vx) << ','
      << format_number(steady.v_star.vy) << ',' << format_number(steady.v_star.omega)
      << ") steady_residual=" << format_number(steady.residual);
  if (scenario.vehicle.damping_is_diagonal()) {
    const double bound = c_hat_bound(scenario.vehicle);
    out << " c_hat=" << (std::isfinite(bound) ? format_number(bound) : "inf");
  } else {
    const TorqueBracket b = c_hat_bracket(scenario.vehicle, 1e3);
    out << " c_hat_bracket=[" << format_number(b.passing) << ','
        << (std::isfinite(b.failing) ? format_number(b.failing) : "inf") << ']';
  }
  const Trajectory full = checked_run(run_full, scenario);
  const double residual = passivity_residual(full, scenario.vehicle, c);
  out << " monotone=" << (monotone ? "true" : "false")
      << " passivity_residual=" << format_number(residual) << '\n';
  return kOk;
}

int cmd_demo_di(double omega, double alpha, double horizon, const std::string& output,
                std::ostream& out) {
  DoubleIntegratorConfig config;
  config.omega = omega;
  config.alpha = alpha;
  config.horizon = horizon;
  DoubleIntegratorReport report;
  try {
    report = double_integrator_demo(config);
  } catch (const IntegrationError& e) {
    throw CommandError(kRunFailed, "integration_failed", e.what());
  } catch (const std::invalid_argument& e) {
    throw CommandError(kUsage, "bad_arguments", e.what());
  }
  if (!output.empty()) {
    const fs::path path(output);
    if (path.has_parent_path()) {
      std::error_code ec;
      fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream csv = open_output(path);
    write_double_integrator_csv(csv, report);
  }
  out << "omega=" << format_number(omega) << " alpha=" << format_number(alpha)
      << " final_error=" << format_number(report.final_error)
      << " period_averaged_final_error=" << format_number(report.period_averaged_final_error)
      << " averaged_final_error=" << format_number(report.averaged_final_error)
      << " sup_deviation=" << format_number(report.sup_deviation) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Surge-force extremum seeking for underactuated planar vehicles",
               "surgeseek"};
  app.require_subcommand(1);

  std::string scenario_file;
  auto* simulate = app.add_subcommand("simulate", "Run the closed loop; writes full.csv");
  simulate->add_option("scenario", scenario_file, "Scenario file")->required();

  auto* average = app.add_subcommand("average", "Run the symmetric product system");
  average->add_option("scenario", scenario_file, "Scenario file")->required();

  double deviation_horizon = std::numeric_limits<double>::infinity();
  auto* compare_cmd = app.add_subcommand("compare", "Run both systems and report metrics");
  compare_cmd->add_option("scenario", scenario_file, "Scenario file")->required();
  compare_cmd->add_option("--deviation-horizon", deviation_horizon,
                          "Only measure sup_deviation up to this time (s)");

  std::string axis;
  std::string values;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one gain and tabulate metrics");
  sweep_cmd->add_option("scenario", scenario_file, "Scenario file")->required();
  sweep_cmd->add_option("--axis", axis, "epsilon, k or c")->required();
  sweep_cmd->add_option("--values", values, "Comma-separated values")->required();

  std::string signal;
  double period = 2.0 * std::numbers::pi;
  double tol = 1e-8;
  auto* validate = app.add_subcommand("validate-dither", "Check dither admissibility");
  validate->add_option("--signal", signal, "cos, sin or const")->required();
  validate->add_option("--period", period, "Period T");
  validate->add_option("--tol", tol, "Residual tolerance");

  std::optional<double> c_override;
  auto* passivity = app.add_subcommand("passivity", "Shifted-passivity diagnostics");
  passivity->add_option("--scenario", scenario_file, "Scenario file")->required();
  passivity->add_option("--c", c_override, "Override the constant torque");

  double omega = 20.0;
  double alpha = 1.0;
  double di_horizon = 50.0;
  std::string di_output;
  auto* demo = app.add_subcommand("demo-di", "Double-integrator averaging demo");
  demo->add_option("--omega", omega, "Dither frequency");
  demo->add_option("--alpha", alpha, "Dither amplitude");
  demo->add_option("--horizon", di_horizon, "Horizon (s)");
  demo->add_option("--output", di_output, "CSV path (t,xi1,xi2,z1,z2)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: bad_arguments: " << one_line(e.what()) << '\n';
    return kUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(scenario_file, out, err);
    if (average->parsed()) return cmd_average(scenario_file, out, err);
    if (compare_cmd->parsed()) return cmd_compare(scenario_file, deviation_horizon, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(scenario_file, axis, values, out, err);
    if (validate->parsed()) return cmd_validate_dither(signal, period, tol, out);
    if (passivity->parsed()) return cmd_passivity(scenario_file, c_override, out, err);
    if (demo->parsed()) return cmd_demo_di(omega, alpha, di_horizon, di_output, out);
  } catch (const CommandError& e) {
    err << "error: " << e.kind() << ": " << one_line(e.what()) << '\n';
    return e.code();
  } catch (const ScenarioError& e) {
    err << "error: invalid_scenario: " << one_line(e.what()) << '\n';
    return kBadScenario;
  } catch (const IntegrationError& e) {
    err << "error: integration_failed: " << one_line(e.what()) << '\n';
    return kRunFailed;
  } catch (const std::exception& e) {
    err << "error: internal: " << one_line(e.what()) << '\n';
    return kRunFailed;
  }
  err << "error: bad_arguments: no subcommand\n";
  return kUsage;
}

}  // namespace surgeseek::cli
