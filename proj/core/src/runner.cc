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

#include "surgeseek/runner.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <future>
#include <limits>
#include <stdexcept>

#include "surgeseek/averaging_core.h"
#include "surgeseek/cost_fields.h"
#include "surgeseek/dither_control.h"

namespace surgeseek {
namespace {

constexpr std::size_t kAveragedMinSteps = 10000;
// Lambda_11 for w = cos over one 2 pi period.
constexpr double kCosineLambda = 0.25;

Trajectory to_trajectory(const StateHistory<6>& history, const CostField& cost,
                         const std::function<ControlInput(double, const VehicleState&)>& input) {
  Trajectory traj;
  const std::size_t n = history.times.size();
  traj.times = history.times;
  traj.states.reserve(n);
  traj.inputs.reserve(n);
  traj.cost.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const VehicleState s = VehicleState::from_vector(history.states[i]);
    traj.states.push_back(s);
    traj.inputs.push_back(input(history.times[i], s));
    traj.cost.push_back(cost(s.q.x, s.q.y));
  }
  return traj;
}

[[noreturn]] void rethrow_with_scenario(const IntegrationError& e,
                                        const Scenario& scenario,
                                        const char* which) {
  throw IntegrationError(std::string(which) + ": " + e.what() +
                             " [scenario: k=" + std::to_string(scenario.gains.k) +
                             " c=" + std::to_string(scenario.gains.c) +
                             " epsilon=" + std::to_string(scenario.gains.epsilon) +
                             " horizon=" + std::to_string(scenario.horizon) + "]",
                         e.time());
}

}  // namespace

Trajectory run_full(const Scenario& scenario) {
  (void)scenario.check();
  const CostField cost = make_cost(scenario.cost);
  const VehicleParams& params = scenario.vehicle;
  const EsGains gains = scenario.gains;
  const IntegratorSettings settings =
      IntegratorSettings::with_max_step(0.0, scenario.horizon, scenario.max_full_step());

  auto control = [&](double t, const VehicleState& s) {
    return es_control(gains, cost(s.q.x, s.q.y), t);
  };
  auto rhs = [&](double t, const Vector6& x) -> Vector6 {
    // Let the integrator report a diverging intermediate stage.
    if (!x.allFinite()) return Vector6::Constant(std::numeric_limits<double>::quiet_NaN());
    const VehicleState s = VehicleState::from_vector(x);
    return dynamics_rhs(params, s, control(t, s)).vector();
  };
  try {
    const StateHistory<6> history =
        integrate<6>(rhs, scenario.initial.vector(), settings);
    return to_trajectory(history, cost, control);
  } catch (const IntegrationError& e) {
    rethrow_with_scenario(e, scenario, "run_full");
  }
}

Trajectory run_averaged(const Scenario& scenario) {
  (void)scenario.check();
  const CostField cost = make_cost(scenario.cost);
  const VehicleParams& params = scenario.vehicle;
  const double k = scenario.gains.k;
  const Vector2 b0(0.0, scenario.gains.c);
  const std::size_t steps = std::max<std::size_t>(
      kAveragedMinSteps, static_cast<std::size_t>(scenario.samples_per_period));
  IntegratorSettings settings;
  settings.t0 = 0.0;
  settings.tf = scenario.horizon;
  settings.step = scenario.horizon / static_cast<double>(steps);

  auto rhs = [&](double, const Vector6& x) -> Vector6 {
    const VehicleState s = VehicleState::from_vector(x);
    const Vector3 v = s.v.vector();
    StateRate rate;
    rate.q_dot = kinematic_matrix(s.q.theta) * v;
    rate.v_dot = velocity_drift(params, b0, v) -
                 kCosineLambda * es_symmetric_product(params, cost, k, s.q);
    return rate.vector();
  };
  auto constant_input = [&](double, const VehicleState&) {
    return ControlInput{0.0, scenario.gains.c};
  };
  try {
    const StateHistory<6> history =
        integrate<6>(rhs, scenario.initial.vector(), settings);
    return to_trajectory(history, cost, constant_input);
  } catch (const IntegrationError& e) {
    rethrow_with_scenario(e, scenario, "run_averaged");
  }
}

MetricsOptions metrics_options(const Scenario& scenario) {
  MetricsOptions options;
  const CostField cost = make_cost(scenario.cost);
  options.target = cost.minimizer.value_or(Vector2::Zero());
  options.window = scenario.dither_period();
  return options;
}

std::size_t window_samples(const Trajectory& trajectory, double window) {
  const double h = trajectory.step();
  if (!(h > 0.0)) return 1;
  const auto count = static_cast<std::size_t>(std::llround(window / h));
  return std::clamp<std::size_t>(count, 1, trajectory.size());
}

namespace {

std::vector<double> planar_error(const Trajectory& trajectory, const Vector2& target) {
  std::vector<double> error(trajectory.size());
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const VehicleState& s = trajectory.states[i];
    error[i] = std::hypot(s.q.x - target.x(), s.q.y - target.y());
  }
  return error;
}

}  // namespace

std::vector<double> period_averaged_error(const Trajectory& trajectory,
                                          const Vector2& target, double window) {
  const std::vector<double> error = planar_error(trajectory, target);
  const std::size_t w = window_samples(trajectory, window);
  std::vector<double> averaged(error.size());
  double running = 0.0;
  for (std::size_t i = 0; i < error.size(); ++i) {
    running += error[i];
    if (i >= w) running -= error[i - w];
    averaged[i] = running / static_cast<double>(std::min(i + 1, w));
  }
  return averaged;
}

double final_error(const Trajectory& trajectory, const Vector2& target,
                   double window) {
  if (trajectory.empty()) throw std::invalid_argument("final_error: empty trajectory");
  const std::vector<double> error = planar_error(trajectory, target);
  const std::size_t w = window_samples(trajectory, window);
  double sum = 0.0;
  for (std::size_t i = error.size() - w; i < error.size(); ++i) sum += error[i];
  return sum / static_cast<double>(w);
}

std::optional<double> convergence_time(const Trajectory& trajectory,
                                       const Vector2& target, double window,
                                       double radius) {
  if (trajectory.empty()) return std::nullopt;
  const std::vector<double> averaged = period_averaged_error(trajectory, target, window);
  const std::size_t w = window_samples(trajectory, window);
  if (averaged.back() > radius) return std::nullopt;
  // Only full windows count as entering the ball.
  std::size_t first_inside = w - 1;
  for (std::size_t i = averaged.size(); i-- > w - 1;) {
    if (averaged[i] > radius) {
      first_inside = i + 1;
      break;
    }
  }
  return trajectory.times[first_inside];
}

double path_length(const Trajectory& trajectory) {
  double length = 0.0;
  for (std::size_t i = 1; i < trajectory.size(); ++i) {
    const BodyVelocity& a = trajectory.states[i - 1].v;
    const BodyVelocity& b = trajectory.states[i].v;
    const double dt = trajectory.times[i] - trajectory.times[i - 1];
    length += 0.5 * dt * (std::hypot(a.vx, a.vy) + std::hypot(b.vx, b.vy));
  }
  return length;
}

std::vector<VehicleState> period_average(const Trajectory& trajectory,
                                         double window) {
  const std::size_t w = window_samples(trajectory, window);
  std::vector<VehicleState> out;
  out.reserve(trajectory.size());
  Vector6 running = Vector6::Zero();
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    running += trajectory.states[i].vector();
    if (i >= w) running -= trajectory.states[i - w].vector();
    out.push_back(VehicleState::from_vector(
        running / static_cast<double>(std::min(i + 1, w))));
  }
  return out;
}

double sup_position_deviation(const Trajectory& full, const Trajectory& averaged,
                              double horizon) {
  if (full.empty() || averaged.empty()) {
    throw std::invalid_argument("sup_position_deviation: empty trajectory");
  }
  const Vector6 delta = full.states.front().vector() - averaged.states.front().vector();
  if (delta.cwiseAbs().maxCoeff() > 1e-12 ||
      std::abs(full.times.front() - averaged.times.front()) > 1e-12) {
    throw std::invalid_argument("compare: trajectories start from different states");
  }
  const double t_end = std::min({horizon, full.times.back(), averaged.times.back()});
  const double t0 = averaged.times.front();
  const double h = averaged.step();
  double worst = 0.0;
  for (std::size_t i = 0; i < full.size() && full.times[i] <= t_end + 1e-12; ++i) {
    const double t = full.times[i];
    double x;
    double y;
    if (averaged.size() < 2) {
      x = averaged.states[0].q.x;
      y = averaged.states[0].q.y;
    } else {
      const double pos = (t - t0) / h;
      std::size_t j = static_cast<std::size_t>(std::clamp(std::floor(pos), 0.0,
                                               static_cast<double>(averaged.size() - 2)));
      double frac = std::clamp(pos - static_cast<double>(j), 0.0, 1.0);
      // Snap onto shared grid points so identical grids compare exactly.
      if (frac < 1e-9) frac = 0.0;
      if (frac > 1.0 - 1e-9) frac = 1.0;
      const Configuration& a = averaged.states[j].q;
      const Configuration& b = averaged.states[j + 1].q;
      x = a.x + frac * (b.x - a.x);
      y = a.y + frac * (b.y - a.y);
    }
    const Configuration& q = full.states[i].q;
    worst = std::max(worst, std::hypot(q.x - x, q.y - y));
  }
  return worst;
}

RunMetrics run_metrics(const Trajectory& trajectory, const MetricsOptions& options) {
  RunMetrics m;
  m.final_error = final_error(trajectory, options.target, options.window);
  m.convergence_time =
      convergence_time(trajectory, options.target, options.window, options.radius);
  m.path_length = path_length(trajectory);
  return m;
}

RunMetrics compare(const Trajectory& full, const Trajectory& averaged,
                   const MetricsOptions& options) {
  RunMetrics m = run_metrics(full, options);
  m.sup_deviation = sup_position_deviation(full, averaged, options.deviation_horizon);
  return m;
}

std::vector<double> v1_monitor(const Trajectory& trajectory,
                               const VehicleParams& params,
                               const CostField& cost, double k) {
  const double scale = k / params.m11();
  const double alpha = 0.5 * scale * scale;
  std::vector<double> v1(trajectory.size());
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const VehicleState& s = trajectory.states[i];
    const double rho = cost(s.q.x, s.q.y);
    v1[i] = 0.5 * s.v.vx * s.v.vx + 0.5 * alpha * rho * rho;
  }
  return v1;
}

SweepAxis parse_sweep_axis(const std::string& name) {
  if (name == "epsilon") return SweepAxis::kEpsilon;
  if (name == "k") return SweepAxis::kK;
  if (name == "c") return SweepAxis::kC;
  throw std::invalid_argument("sweep axis must be one of epsilon, k, c (got '" +
                              name + "')");
}

std::string sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kEpsilon:
      return "epsilon";
    case SweepAxis::kK:
      return "k";
    case SweepAxis::kC:
      return "c";
  }
  return "unknown";
}

Scenario with_axis_value(const Scenario& base, SweepAxis axis, double value,
                         bool keep_horizon) {
  Scenario s = base;
  switch (axis) {
    case SweepAxis::kEpsilon:
      s.gains.epsilon = value;
      if (!keep_horizon) s.horizon = default_horizon(value);
      break;
    case SweepAxis::kK:
      s.gains.k = value;
      break;
    case SweepAxis::kC:
      s.gains.c = value;
      break;
  }
  return s;
}

std::vector<SweepRow> sweep(const Scenario& base, SweepAxis axis,
                            std::span<const double> values,
                            const SweepOptions& options) {
  auto run_one = [&](std::size_t index) {
    SweepRow row;
    row.value = values[index];
    try {
      const Scenario scenario = with_axis_value(base, axis, values[index]);
      const Trajectory full = run_full(scenario);
      const Trajectory averaged = run_averaged(scenario);
      row.metrics = compare(full, averaged, metrics_options(scenario));
      if (options.on_run) options.on_run(index, scenario, full);
    } catch (const std::exception& e) {
      row.status = std::string("failed: ") + e.what();
    }
    return row;
  };

  std::vector<SweepRow> rows(values.size());
  if (options.parallel && values.size() > 1) {
    std::vector<std::future<SweepRow>> pending;
    pending.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      pending.push_back(std::async(std::launch::async, run_one, i));
    }
    for (std::size_t i = 0; i < values.size(); ++i) rows[i] = pending[i].get();
  } else {
    for (std::size_t i = 0; i < values.size(); ++i) rows[i] = run_one(i);
  }
  return rows;
}

}  // namespace surgeseek
