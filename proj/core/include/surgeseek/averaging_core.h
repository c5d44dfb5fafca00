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

#ifndef SURGESEEK_AVERAGING_CORE_H_
#define SURGESEEK_AVERAGING_CORE_H_

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "surgeseek/cost_fields.h"
#include "surgeseek/dither_control.h"
#include "surgeseek/ode_engine.h"
#include "surgeseek/vehicle_model.h"

namespace surgeseek {

// Default central-difference probe; scaled per coordinate by (1 + |x_j|).
inline constexpr double kDefaultProbe = 1e-5;

// A vector field on configuration space, valued in body-velocity space
// (e.g. an input direction M^-1 G b_i(q)). When `jacobian` is empty the
// Jacobian is taken by central differences.
struct ConfigVectorField {
  std::function<Vector3(const Configuration&)> value;
  std::function<Matrix3(const Configuration&)> jacobian;

  Vector3 operator()(const Configuration& q) const { return value(q); }
  Matrix3 jacobian_at(const Configuration& q,
                      double probe = kDefaultProbe) const;
};

// Vector field on a flat state space of any dimension.
using StateField = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

// Fourth-order central-difference Jacobian (five-point stencil); column j
// uses step probe * (1 + |x_j|).
Eigen::MatrixXd numeric_jacobian(const StateField& field,
                                 const Eigen::VectorXd& point, double probe);

// [first, second] = (d second / dx) first - (d first / dx) second, so that
// ad_g f = lie_bracket(g, f). Throws std::domain_error naming the field that
// produced a non-finite value.
Eigen::VectorXd lie_bracket(const StateField& first, const StateField& second,
                            const Eigen::VectorXd& point, double probe,
                            const std::string& first_name = "first",
                            const std::string& second_name = "second");

// Velocity part of the drift, -M^-1 (C(v) v + D v - G b0).
Vector3 velocity_drift(const VehicleParams& params, const Vector2& b0,
                       const Vector3& v);

// <X:Y>(q) = (dX/dq) J(q) Y + (dY/dq) J(q) X - (d/dv ((d f2/dv) X)) Y.
// The last term is the exact Coriolis bilinear form; the damping and b0
// terms drop out under the second v-derivative, so b0 does not affect the
// result. Symmetric in (X, Y) bit for bit.
Vector3 symmetric_product(const ConfigVectorField& x,
                          const ConfigVectorField& y,
                          const VehicleParams& params, const Vector2& b0,
                          const Configuration& q);

// B1(q) = M^-1 G (k rho(x, y), 0) = (k rho / m11, 0, 0), analytic Jacobian.
ConfigVectorField es_input_field(const VehicleParams& params,
                                 const CostField& cost, double k);

// Closed form of <B1:B1> for the seeking law:
//   2 (k / m11)^2 rho (rho_x cos(theta) + rho_y sin(theta)) e1.
Vector3 es_symmetric_product(const VehicleParams& params,
                             const CostField& cost, double k,
                             const Configuration& q);

// B_i(q) = M^-1 G b_i(q) for each component; Jacobians by finite differences.
std::vector<ConfigVectorField> input_fields(const DitherSet& set,
                                            const VehicleParams& params);

struct LambdaMatrix {
  Eigen::MatrixXd entries;

  int size() const { return static_cast<int>(entries.rows()); }
  double operator()(int i, int j) const { return entries(i, j); }
};

// Lambda_ij = 1/(2T) int_0^T W_i(s) W_j(s) ds with W_i the running integral
// of w_i, by composite Simpson. Throws std::invalid_argument on a period
// mismatch or an inadmissible dither.
LambdaMatrix lambda_matrix(const std::vector<Dither>& dithers,
                           int panels = 4096);
LambdaMatrix lambda_matrix(const DitherSet& set, int panels = 4096);

// -sum_ij Lambda_ij <B_i:B_j>(q), as an acceleration.
Vector3 averaged_forcing(const VehicleParams& params, const Vector2& b0,
                         const std::vector<ConfigVectorField>& fields,
                         const LambdaMatrix& lambda, const Configuration& q);

using AveragedState = VehicleState;

// Symmetric product system:
//   q_dot = J(q) v,
//   M v_dot = G b0 - C(v) v - D v - M sum_ij Lambda_ij <B_i:B_j>(q).
StateRate averaged_rhs(const VehicleParams& params, const Vector2& b0,
                       const std::vector<ConfigVectorField>& fields,
                       const LambdaMatrix& lambda, const AveragedState& state);

// Xi(tau, q) = sum_i (int_0^tau w_i) B_i(q), with tau in dither time
// (t / epsilon). Uses the closed-form antiderivative when available and
// otherwise cumulative quadrature over tau reduced modulo the period, which
// relies on the dither having zero mean.
Vector3 xi_field(const DitherSet& set, const VehicleParams& params, double tau,
                 const Configuration& q);

// v = v_hat + Xi.
BodyVelocity reconstruct_velocity(const BodyVelocity& vhat, const Vector3& xi);

// Closed-loop fields on (q, v) in dither time: the drift f(q, v) =
// (J(q) v, f2(v)) and the input field g(tau, q) = (0, sum_i B_i(q) w_i(tau)).
StateField closed_loop_drift(const VehicleParams& params, const Vector2& b0);
StateField closed_loop_input(const VehicleParams& params, const DitherSet& set,
                             double tau);

// Damped double integrator on (z1, z2): drift (z2, -z2) and the input
// direction (0, k(z1)).
StateField double_integrator_drift();
StateField double_integrator_input(const ScalarSignal& k);

struct ScalarCost {
  ScalarSignal value;
  ScalarSignal derivative;
  double minimizer = 0.0;
};

// h(x) = (x - 1)^2 + 1.
ScalarCost shifted_parabola();

struct DoubleIntegratorConfig {
  ScalarCost cost = shifted_parabola();
  double alpha = 1.0;
  double omega = 20.0;
  double horizon = 50.0;
  int samples_per_period = 200;
  Eigen::Vector2d initial = Eigen::Vector2d::Zero();
};

struct DoubleIntegratorReport {
  StateHistory<2> full;
  StateHistory<2> averaged;
  double sup_deviation = 0.0;  // sup_t |xi1 - zbar1|
  double final_error = 0.0;    // |xi1(horizon) - minimizer|
  double averaged_final_error = 0.0;
  double period_averaged_final_error = 0.0;
};

// Simulates xi1' = xi2, xi2' = -xi2 + h(xi1) alpha omega cos(omega t) and its
// average z1' = z2, z2' = -z2 - (alpha^2 / 4) 2 h(z1) h'(z1) on a shared grid
// with at least `samples_per_period` steps per dither period.
DoubleIntegratorReport double_integrator_demo(
    const DoubleIntegratorConfig& config);

}  // namespace surgeseek

#endif  // SURGESEEK_AVERAGING_CORE_H_
