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

#ifndef SURGESEEK_RUNNER_H_
#define SURGESEEK_RUNNER_H_

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "surgeseek/ode_engine.h"
#include "surgeseek/scenario.h"

namespace surgeseek {

// Closed loop under the seeking law, step epsilon 2 pi / samples_per_period
// (rounded down to divide the horizon). Records state, input and cost at
// every step. Integration failures are rethrown with the scenario echoed.
Trajectory run_full(const Scenario& scenario);

// Symmetric product system for the seeking law (Lambda_11 = 1/4 and the
// closed-form <B1:B1>), with max(10^4, samples_per_period) uniform steps.
// Recorded inputs are the constant part (0, c).
Trajectory run_averaged(const Scenario& scenario);

struct MetricsOptions {
  Vector2 target = Vector2::Zero();
  double window = 0.0;  // averaging window, one dither period (s)
  double radius = kConvergenceRadius;
  double deviation_horizon = std::numeric_limits<double>::infinity();
};

MetricsOptions metrics_options(const Scenario& scenario);

struct RunMetrics {
  double final_error = 0.0;                 // m
  std::optional<double> convergence_time;  // s; empty means never
  double path_length = 0.0;                 // m
  double sup_deviation = 0.0;               // m
};

// Samples spanning one window on the trajectory's grid (at least 1).
std::size_t window_samples(const Trajectory& trajectory, double window);

// Trailing mean of the planar distance to `target` over `window`; entries
// before one full window are averaged over what is available.
std::vector<double> period_averaged_error(const Trajectory& trajectory,
                                          const Vector2& target, double window);

// Mean planar distance to `target` over the last window of the run.
double final_error(const Trajectory& trajectory, const Vector2& target,
                   double window);

// First time after which the period-averaged error stays within `radius`.
std::optional<double> convergence_time(const Trajectory& trajectory,
                                       const Vector2& target, double window,
                                       double radius);

// Trapezoidal integral of the planar speed.
double path_length(const Trajectory& trajectory);

// Trailing window mean of the full state vector.
std::vector<VehicleState> period_average(const Trajectory& trajectory,
                                         double window);

// sup over t <= horizon of |(x, y)_full(t) - (x, y)_avg(t)|, with the
// averaged run linearly interpolated onto the full grid. Heading is not
// included. Throws std::invalid_argument if the initial states differ.
double sup_position_deviation(const Trajectory& full, const Trajectory& averaged,
                              double horizon =
                                  std::numeric_limits<double>::infinity());

// Metrics of `full`, with sup_deviation measured against `averaged`.
RunMetrics compare(const Trajectory& full, const Trajectory& averaged,
                   const MetricsOptions& options);

// Metrics of a single run; sup_deviation is left at 0.
RunMetrics run_metrics(const Trajectory& trajectory, const MetricsOptions& options);

// V1 = 1/2 vx^2 + (alpha / 2) rho^2 with alpha = (k / m11)^2 / 2, per sample.
std::vector<double> v1_monitor(const Trajectory& trajectory,
                               const VehicleParams& params,
                               const CostField& cost, double k);

enum class SweepAxis { kEpsilon, kK, kC };

// "epsilon", "k" or "c"; throws std::invalid_argument otherwise.
SweepAxis parse_sweep_axis(const std::string& name);
std::string sweep_axis_name(SweepAxis axis);

// Copy of `base` with one gain replaced. Changing epsilon also resets the
// horizon to default_horizon() unless `keep_horizon`.
Scenario with_axis_value(const Scenario& base, SweepAxis axis, double value,
                         bool keep_horizon = true);

struct SweepRow {
  double value = 0.0;
  RunMetrics metrics;
  std::string status = "ok";  // "ok" or "failed: <reason>"
};

struct SweepOptions {
  bool parallel = true;
  // Called from the worker that finished run `index`; must be thread-safe
  // across distinct indices.
  std::function<void(std::size_t index, const Scenario&, const Trajectory&)> on_run;
};

// One full and one averaged run per value. Runs are independent; failures
// become rows with a failure status and the sweep continues. Rows keep the
// order of `values`.
std::vector<SweepRow> sweep(const Scenario& base, SweepAxis axis,
                            std::span<const double> values,
                            const SweepOptions& options = {});

}  // namespace surgeseek

#endif  // SURGESEEK_RUNNER_H_
