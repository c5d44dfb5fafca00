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

#include "surgeseek/passivity.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace surgeseek {
namespace {

constexpr double kSteadyStateTolerance = 1e-10;

void require_diagonal(const VehicleParams& params, const char* who) {
  if (!params.damping_is_diagonal()) {
    throw std::invalid_argument(std::string(who) +
                                " requires a diagonal damping matrix");
  }
}

SteadyState make_steady_state(const VehicleParams& params, const Vector3& v,
                              const ControlInput& u) {
  SteadyState s;
  s.u_star = u;
  s.v_star = BodyVelocity::from_vector(v);
  s.eta_star = input_matrix().transpose() * v;
  s.residual = steady_state_residual(params, s.v_star, u);
  return s;
}

// Steady state of the model with the Coriolis term removed: D v = G u.
SteadyState damping_only_steady_state(const VehicleParams& params, double c) {
  const ControlInput u{0.0, c};
  const Vector3 v = params.damping().llt().solve(input_matrix() * u.vector());
  SteadyState s;
  s.u_star = u;
  s.v_star = BodyVelocity::from_vector(v);
  s.eta_star = input_matrix().transpose() * v;
  s.residual = (params.damping() * v - input_matrix() * u.vector()).cwiseAbs().maxCoeff();
  return s;
}

}  // namespace

double steady_state_residual(const VehicleParams& params, const BodyVelocity& v,
                             const ControlInput& u) {
  const Vector3 w = v.vector();
  return (coriolis_force(params, w) + params.damping() * w -
          input_matrix() * u.vector())
      .cwiseAbs()
      .maxCoeff();
}

SteadyState steady_state_for_torque(const VehicleParams& params, double c) {
  if (!(c >= 0.0)) throw std::invalid_argument("torque c must be >= 0");
  const ControlInput u{0.0, c};
  if (params.damping_is_diagonal()) {
    return make_steady_state(params, Vector3(0.0, 0.0, c / params.damping()(2, 2)), u);
  }
  const Eigen::LLT<Matrix3> damping(params.damping());
  const Vector3 forcing = input_matrix() * u.vector();
  Vector3 v = damping.solve(forcing);
  constexpr double kRelaxation = 0.5;
  constexpr int kMaxIterations = 200000;
  for (int it = 0; it < kMaxIterations; ++it) {
    if (steady_state_residual(params, BodyVelocity::from_vector(v), u) <=
        kSteadyStateTolerance) {
      return make_steady_state(params, v, u);
    }
    const Vector3 target = damping.solve(forcing - coriolis_force(params, v));
    v = (1.0 - kRelaxation) * v + kRelaxation * target;
    if (!v.allFinite()) break;
  }
  throw std::runtime_error("steady_state_for_torque: fixed-point iteration did "
                           "not reach the 1e-10 residual");
}

double c_hat_bound(const VehicleParams& params) {
  require_diagonal(params, "c_hat_bound");
  const double gap = std::abs(params.m22() - params.m11());
  if (gap == 0.0) return kUnboundedTorque;
  const Matrix3& d = params.damping();
  return 2.0 * std::sqrt(d(0, 0) * d(1, 1)) * d(2, 2) / gap;
}

double monotonicity_margin(const VehicleParams& params, double c) {
  const SteadyState steady = steady_state_for_torque(params, c);
  const Vector3 v_star = steady.v_star.vector();
  // C(v) v* is linear in v; column j is C(e_j) v*.
  Matrix3 a;
  for (int j = 0; j < 3; ++j) {
    a.col(j) = coriolis(params, BodyVelocity::from_vector(Vector3::Unit(j))) * v_star;
  }
  const Matrix3 gap = 2.0 * params.damping() - (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix3> solver(gap, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool monotonicity_check(const VehicleParams& params, double c) {
  if (params.damping_is_diagonal()) {
    const Matrix3& d = params.damping();
    const double omega_star = c / d(2, 2);
    const double coupling = params.m11() - params.m22();
    const double lhs = 4.0 * d(0, 0) * d(1, 1);
    const double rhs = omega_star * omega_star * coupling * coupling;
    return rhs <= lhs * (1.0 + 1e-9);
  }
  const double scale = params.damping().cwiseAbs().maxCoeff();
  return monotonicity_margin(params, c) >= -1e-9 * scale;
}

TorqueBracket c_hat_bracket(const VehicleParams& params, double c_max,
                            double tolerance) {
  if (!(c_max > 0.0)) throw std::invalid_argument("c_max must be > 0");
  if (monotonicity_check(params, c_max)) return {c_max, kUnboundedTorque};
  double lo = 0.0;
  double hi = c_max;
  while (hi - lo > tolerance * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (monotonicity_check(params, mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

double storage_inequality_gap(const VehicleParams& params, const BodyVelocity& v,
                              const ControlInput& u, const SteadyState& steady,
                              CoriolisTerm coriolis) {
  const Vector3 w = v.vector();
  const Vector3 shift = w - steady.v_star.vector();
  Vector3 force = input_matrix() * u.vector() - params.damping() * w;
  if (coriolis == CoriolisTerm::kInclude) force -= coriolis_force(params, w);
  const double storage_rate = shift.dot(force);
  const Vector2 eta = input_matrix().transpose() * w;
  const double supply =
      (u.vector() - steady.u_star.vector()).dot(eta - steady.eta_star);
  return storage_rate - supply;
}

double passivity_residual(const Trajectory& trajectory,
                          const VehicleParams& params, double c,
                          CoriolisTerm coriolis) {
  if (trajectory.inputs.size() != trajectory.states.size()) {
    throw std::invalid_argument("passivity_residual: inputs not recorded");
  }
  const SteadyState steady = coriolis == CoriolisTerm::kInclude
                                 ? steady_state_for_torque(params, c)
                                 : damping_only_steady_state(params, c);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < trajectory.states.size(); ++n) {
    worst = std::max(worst, storage_inequality_gap(params, trajectory.states[n].v,
                                                   trajectory.inputs[n], steady,
                                                   coriolis));
  }
  return worst;
}

}  // namespace surgeseek
