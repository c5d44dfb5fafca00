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

#include "surgeseek/vehicle_model.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>

namespace surgeseek {

Vector6 VehicleState::vector() const {
  Vector6 s;
  s << q.x, q.y, q.theta, v.vx, v.vy, v.omega;
  return s;
}

VehicleState VehicleState::from_vector(const Vector6& s) {
  return {{s(0), s(1), s(2)}, {s(3), s(4), s(5)}};
}

Vector6 StateRate::vector() const {
  Vector6 s;
  s << q_dot, v_dot;
  return s;
}

VehicleParams::VehicleParams(double m11, double m22, double m33,
                             const Matrix3& damping)
    : m11_(m11), m22_(m22), m33_(m33), damping_(damping) {
  if (!(m11 > 0.0) || !(m22 > 0.0) || !(m33 > 0.0)) {
    throw std::invalid_argument("inertia entries must be strictly positive");
  }
  if (!damping.allFinite()) {
    throw std::invalid_argument("damping matrix has non-finite entries");
  }
  const double scale = damping.cwiseAbs().maxCoeff();
  if ((damping - damping.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("damping matrix must be symmetric");
  }
  Eigen::LLT<Matrix3> llt(damping);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("damping matrix must be positive definite");
  }
}

VehicleParams VehicleParams::diagonal(double m11, double m22, double m33,
                                      double d11, double d22, double d33) {
  return VehicleParams(m11, m22, m33, Vector3(d11, d22, d33).asDiagonal());
}

VehicleParams VehicleParams::boat() {
  return diagonal(1.412, 1.982, 0.354, 3.436, 12.99, 0.864);
}

Matrix3 VehicleParams::inertia() const {
  return Vector3(m11_, m22_, m33_).asDiagonal();
}

Matrix3 VehicleParams::inertia_inverse() const {
  return Vector3(1.0 / m11_, 1.0 / m22_, 1.0 / m33_).asDiagonal();
}

bool VehicleParams::damping_is_diagonal() const {
  return damping_(0, 1) == 0.0 && damping_(0, 2) == 0.0 &&
         damping_(1, 2) == 0.0 && damping_(1, 0) == 0.0 &&
         damping_(2, 0) == 0.0 && damping_(2, 1) == 0.0;
}

Matrix3 kinematic_matrix(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Matrix3 j;
  j << c, -s, 0.0,
       s, c, 0.0,
       0.0, 0.0, 1.0;
  return j;
}

Matrix32 input_matrix() {
  Matrix32 g;
  g << 1.0, 0.0,
       0.0, 0.0,
       0.0, 1.0;
  return g;
}

Matrix3 coriolis(const VehicleParams& params, const BodyVelocity& v) {
  const double a = params.m22() * v.vy;
  const double b = params.m11() * v.vx;
  Matrix3 c;
  c << 0.0, 0.0, -a,
       0.0, 0.0, b,
       a, -b, 0.0;
  return c;
}

Vector3 coriolis_force(const VehicleParams& params, const Vector3& v) {
  return coriolis(params, BodyVelocity::from_vector(v)) * v;
}

Vector3 coriolis_bilinear(const VehicleParams& params, const Vector3& x,
                          const Vector3& y) {
  return coriolis(params, BodyVelocity::from_vector(x)) * y +
         coriolis(params, BodyVelocity::from_vector(y)) * x;
}

StateRate dynamics_rhs(const VehicleParams& params, const VehicleState& state,
                       const ControlInput& u) {
  const Vector3 v = state.v.vector();
  StateRate rate;
  rate.q_dot = kinematic_matrix(state.q.theta) * v;
  const Vector3 force = input_matrix() * u.vector() -
                        coriolis_force(params, v) - params.damping() * v;
  rate.v_dot = params.inertia_inverse() * force;
  return rate;
}

double kinetic_energy(const VehicleParams& params, const BodyVelocity& v) {
  const Vector3 w = v.vector();
  return 0.5 * w.dot(params.inertia() * w);
}

}  // namespace surgeseek
