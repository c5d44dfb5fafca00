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

#ifndef SURGESEEK_VEHICLE_MODEL_H_
#define SURGESEEK_VEHICLE_MODEL_H_

#include <Eigen/Core>

namespace surgeseek {

using Vector2 = Eigen::Vector2d;
using Vector3 = Eigen::Vector3d;
using Vector6 = Eigen::Matrix<double, 6, 1>;
using Matrix3 = Eigen::Matrix3d;
using Matrix32 = Eigen::Matrix<double, 3, 2>;

// Planar pose. Heading lives on the real line and is never wrapped.
struct Configuration {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Vector3 vector() const { return {x, y, theta}; }
  static Configuration from_vector(const Vector3& q) { return {q(0), q(1), q(2)}; }
  bool finite() const { return vector().allFinite(); }
};

// Body-frame velocity: surge, sway, yaw rate.
struct BodyVelocity {
  double vx = 0.0;
  double vy = 0.0;
  double omega = 0.0;

  Vector3 vector() const { return {vx, vy, omega}; }
  static BodyVelocity from_vector(const Vector3& v) { return {v(0), v(1), v(2)}; }
  bool finite() const { return vector().allFinite(); }
};

// Surge force and yaw torque. There is no sway actuator.
struct ControlInput {
  double u1 = 0.0;
  double u2 = 0.0;

  Vector2 vector() const { return {u1, u2}; }
  static ControlInput from_vector(const Vector2& u) { return {u(0), u(1)}; }
};

struct VehicleState {
  Configuration q;
  BodyVelocity v;

  Vector6 vector() const;
  static VehicleState from_vector(const Vector6& s);
};

struct StateRate {
  Vector3 q_dot = Vector3::Zero();
  Vector3 v_dot = Vector3::Zero();

  Vector6 vector() const;
};

// Inertia and damping of the 3-DOF planar rigid body. M is diagonal; D is
// any constant symmetric positive definite matrix.
class VehicleParams {
 public:
  // Throws std::invalid_argument when an inertia is not strictly positive or
  // the damping matrix is not symmetric positive definite.
  VehicleParams(double m11, double m22, double m33, const Matrix3& damping);

  static VehicleParams diagonal(double m11, double m22, double m33, double d11,
                                double d22, double d33);

  // Surface boat with linear hydrodynamic damping used in the reference
  // simulations.
  static VehicleParams boat();

  double m11() const { return m11_; }
  double m22() const { return m22_; }
  double m33() const { return m33_; }
  Matrix3 inertia() const;
  Matrix3 inertia_inverse() const;
  const Matrix3& damping() const { return damping_; }
  bool damping_is_diagonal() const;

 private:
  double m11_;
  double m22_;
  double m33_;
  Matrix3 damping_;
};

// Rotation from body frame to the inertial frame; heading row is identity.
Matrix3 kinematic_matrix(double theta);

// Actuation map: surge force and yaw torque only.
Matrix32 input_matrix();

// Skew-symmetric Coriolis/centripetal matrix of the boat.
Matrix3 coriolis(const VehicleParams& params, const BodyVelocity& v);

// C(v) v.
Vector3 coriolis_force(const VehicleParams& params, const Vector3& v);

// Second v-derivative of C(v)v contracted with (x, y): C(x)y + C(y)x.
// C(v)v is quadratic, so this does not depend on the linearization point.
Vector3 coriolis_bilinear(const VehicleParams& params, const Vector3& x,
                          const Vector3& y);

// q_dot = J(q) v,  M v_dot = G u - C(v) v - D v.
StateRate dynamics_rhs(const VehicleParams& params, const VehicleState& state,
                       const ControlInput& u);

// 1/2 v^T M v.
double kinetic_energy(const VehicleParams& params, const BodyVelocity& v);

}  // namespace surgeseek

#endif  // SURGESEEK_VEHICLE_MODEL_H_
