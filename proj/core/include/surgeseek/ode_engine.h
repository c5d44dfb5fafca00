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

#ifndef SURGESEEK_ODE_ENGINE_H_
#define SURGESEEK_ODE_ENGINE_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "surgeseek/vehicle_model.h"

namespace surgeseek {

enum class IntegrationMethod { kClassicalRk4 };

// Fixed-step integration window. The horizon must be an integer number of
// steps; use with_max_step() to derive a compatible step from a bound.
struct IntegratorSettings {
  double step = 1e-3;
  double t0 = 0.0;
  double tf = 1.0;
  IntegrationMethod method = IntegrationMethod::kClassicalRk4;

  // Smallest step count N with (tf - t0) / N <= max_step.
  static IntegratorSettings with_max_step(double t0, double tf,
                                          double max_step);

  // Validates the invariants and returns (tf - t0) / step.
  std::size_t step_count() const;

  // t0 + n * step, computed without accumulation.
  double time_at(std::size_t n) const { return t0 + static_cast<double>(n) * step; }
};

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

template <int N>
struct StateHistory {
  using State = Eigen::Matrix<double, N, 1>;
  std::vector<double> times;
  std::vector<State> states;
};

template <int N, typename Rhs>
Eigen::Matrix<double, N, 1> rk4_step(Rhs& rhs, double t, double h,
                                     const Eigen::Matrix<double, N, 1>& x) {
  using State = Eigen::Matrix<double, N, 1>;
  const double half = 0.5 * h;
  const State k1 = rhs(t, x);
  const State k2 = rhs(t + half, State(x + half * k1));
  const State k3 = rhs(t + half, State(x + half * k2));
  const State k4 = rhs(t + h, State(x + h * k3));
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Classical RK4 with a fixed step. Every step is recorded, including t0.
// rhs(t, x) must return the state derivative. Throws IntegrationError if the
// state stops being finite.
template <int N, typename Rhs>
StateHistory<N> integrate(Rhs&& rhs, const Eigen::Matrix<double, N, 1>& initial,
                          const IntegratorSettings& settings) {
  const std::size_t steps = settings.step_count();
  if (!initial.allFinite()) {
    throw IntegrationError("non-finite initial state at t=" +
                               std::to_string(settings.t0),
                           settings.t0);
  }
  StateHistory<N> history;
  history.times.reserve(steps + 1);
  history.states.reserve(steps + 1);
  history.times.push_back(settings.t0);
  history.states.push_back(initial);
  Eigen::Matrix<double, N, 1> x = initial;
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = settings.time_at(n);
    x = rk4_step<N>(rhs, t, settings.step, x);
    const double t_next = settings.time_at(n + 1);
    if (!x.allFinite()) {
      throw IntegrationError(
          "state blew up (non-finite) at t=" + std::to_string(t_next), t_next);
    }
    history.times.push_back(t_next);
    history.states.push_back(x);
  }
  return history;
}

// Vehicle run record: one entry per integrator step.
struct Trajectory {
  std::vector<double> times;
  std::vector<VehicleState> states;
  std::vector<ControlInput> inputs;
  std::vector<double> cost;

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }
  double step() const;

  // Throws std::logic_error when array lengths differ or the time grid is
  // not strictly increasing with constant spacing.
  void check_invariants() const;
};

}  // namespace surgeseek

#endif  // SURGESEEK_ODE_ENGINE_H_
