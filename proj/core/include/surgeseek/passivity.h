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

#ifndef SURGESEEK_PASSIVITY_H_
#define SURGESEEK_PASSIVITY_H_

#include <limits>

#include "surgeseek/ode_engine.h"
#include "surgeseek/vehicle_model.h"

namespace surgeseek {

// A point of the steady-state set C(v) v + D v = G u.
struct SteadyState {
  ControlInput u_star;
  BodyVelocity v_star;
  Vector2 eta_star = Vector2::Zero();  // G^T v*: surge velocity, yaw rate
  double residual = 0.0;
};

// |C(v) v + D v - G u|_inf.
double steady_state_residual(const VehicleParams& params, const BodyVelocity& v,
                             const ControlInput& u);

// Steady state under u* = (0, c). Closed form v* = (0, 0, c / d33) for
// diagonal damping; otherwise damped fixed-point iteration. Throws
// std::runtime_error if the residual does not reach 1e-10.
SteadyState steady_state_for_torque(const VehicleParams& params, double c);

inline constexpr double kUnboundedTorque = std::numeric_limits<double>::infinity();

// Largest torque for which the shifted-passivity condition holds,
// 2 sqrt(d11 d22) d33 / |m22 - m11|; kUnboundedTorque when m11 == m22. The
// condition depends on (m11 - m22)^2 only, so a surge-heavy hull is bounded
// too.
// Requires diagonal damping (throws std::invalid_argument otherwise).
double c_hat_bound(const VehicleParams& params);

// Whether J(v) = C(v) v* + D v is monotone, i.e. the symmetrized Jacobian of
// C(v) v* is bounded by 2D. Diagonal damping uses the closed form
// 4 d11 d22 >= (c / d33)^2 (m11 - m22)^2 with a 1e-9 relative slack; general
// damping uses the smallest eigenvalue of 2D - (A + A^T).
bool monotonicity_check(const VehicleParams& params, double c);

// Eigenvalue form of the same test, valid for any damping matrix.
double monotonicity_margin(const VehicleParams& params, double c);

struct TorqueBracket {
  double passing = 0.0;  // monotonicity holds here
  double failing = 0.0;  // and fails here
};

// Bisection on monotonicity_check over (0, c_max]. For diagonal damping this
// brackets c_hat_bound; for general damping it is the only available answer.
// Returns {c_max, inf} if the check never fails below c_max.
TorqueBracket c_hat_bracket(const VehicleParams& params, double c_max,
                            double tolerance = 1e-9);

enum class CoriolisTerm { kInclude, kOmit };

// Storage-rate minus supply, H_dot - (u - u*)^T (eta - eta*), at one sample,
// with H = 1/2 (v - v*)^T M (v - v*) and H_dot taken from the dynamics.
double storage_inequality_gap(const VehicleParams& params, const BodyVelocity& v,
                              const ControlInput& u, const SteadyState& steady,
                              CoriolisTerm coriolis = CoriolisTerm::kInclude);

// Maximum of storage_inequality_gap over the samples of a trajectory. Shifted
// passivity predicts a value <= 0 whenever monotonicity_check(params, c)
// holds. kOmit drops the Coriolis term from the model (and from the steady
// state) for comparison runs.
double passivity_residual(const Trajectory& trajectory,
                          const VehicleParams& params, double c,
                          CoriolisTerm coriolis = CoriolisTerm::kInclude);

}  // namespace surgeseek

#endif  // SURGESEEK_PASSIVITY_H_
