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

#include <gtest/gtest.h>

#include <Eigen/LU>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "surgeseek/ode_engine.h"

namespace surgeseek {
namespace {

TEST(VehicleParams, BoatValues) {
  const VehicleParams p = VehicleParams::boat();
  EXPECT_DOUBLE_EQ(p.m11(), 1.412);
  EXPECT_DOUBLE_EQ(p.m22(), 1.982);
  EXPECT_DOUBLE_EQ(p.m33(), 0.354);
  EXPECT_DOUBLE_EQ(p.damping()(0, 0), 3.436);
  EXPECT_DOUBLE_EQ(p.damping()(1, 1), 12.99);
  EXPECT_DOUBLE_EQ(p.damping()(2, 2), 0.864);
  EXPECT_TRUE(p.damping_is_diagonal());
  EXPECT_TRUE((p.inertia() * p.inertia_inverse()).isApprox(Matrix3::Identity()));
}

TEST(VehicleParams, RejectsInvalid) {
  EXPECT_THROW(VehicleParams::diagonal(0.0, 1, 1, 1, 1, 1), std::invalid_argument);
  EXPECT_THROW(VehicleParams::diagonal(1, -1, 1, 1, 1, 1), std::invalid_argument);
  EXPECT_THROW(VehicleParams::diagonal(1, 1, 1, 1, 0.0, 1), std::invalid_argument);
  Matrix3 asym = Matrix3::Identity();
  asym(0, 1) = 0.3;
  EXPECT_THROW(VehicleParams(1, 1, 1, asym), std::invalid_argument);
  Matrix3 indefinite = Matrix3::Identity();
  indefinite(0, 1) = indefinite(1, 0) = 2.0;
  EXPECT_THROW(VehicleParams(1, 1, 1, indefinite), std::invalid_argument);
}

TEST(VehicleParams, AcceptsCoupledDamping) {
  Matrix3 d = Matrix3::Identity() * 2.0;
  d(0, 1) = d(1, 0) = 0.5;
  const VehicleParams p(1.0, 1.5, 0.5, d);
  EXPECT_FALSE(p.damping_is_diagonal());
}

TEST(Kinematics, RotationProperties) {
  for (double th : {0.0, 0.3, 1.7, -2.5, 10.0}) {
    const Matrix3 j = kinematic_matrix(th);
    EXPECT_TRUE((j.transpose() * j).isApprox(Matrix3::Identity(), 1e-14));
    EXPECT_NEAR(j.determinant(), 1.0, 1e-14);
  }
  const Vector3 v = kinematic_matrix(std::numbers::pi / 2) * Vector3(1, 0, 0);
  EXPECT_NEAR(v(0), 0.0, 1e-15);
  EXPECT_NEAR(v(1), 1.0, 1e-15);
}

TEST(InputMatrix, Shape) {
  const Matrix32 g = input_matrix();
  Matrix32 expected;
  expected << 1, 0, 0, 0, 0, 1;
  EXPECT_EQ(g, expected);
}

TEST(Coriolis, SkewSymmetricAndEntries) {
  const VehicleParams p = VehicleParams::boat();
  const BodyVelocity v{0.7, -0.4, 1.3};
  const Matrix3 c = coriolis(p, v);
  EXPECT_TRUE((c + c.transpose()).isZero(1e-15));
  EXPECT_DOUBLE_EQ(c(0, 2), -p.m22() * v.vy);
  EXPECT_DOUBLE_EQ(c(1, 2), p.m11() * v.vx);
  EXPECT_DOUBLE_EQ(c(2, 0), p.m22() * v.vy);
  EXPECT_DOUBLE_EQ(c(2, 1), -p.m11() * v.vx);
}

TEST(Coriolis, RestHasNoForce) {
  const VehicleParams p = VehicleParams::boat();
  EXPECT_TRUE(coriolis(p, {}).isZero());
  const StateRate r = dynamics_rhs(p, {}, {});
  EXPECT_TRUE(r.vector().isZero());
}

TEST(Coriolis, PowerlessAndHomogeneous) {
  const VehicleParams p = VehicleParams::boat();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const Vector3 v(u(rng), u(rng), u(rng));
    const Vector3 f = coriolis_force(p, v);
    EXPECT_NEAR(v.dot(f), 0.0, 1e-12 * (1.0 + v.squaredNorm()));
    const double s = u(rng);
    EXPECT_TRUE(coriolis_force(p, s * v).isApprox(s * s * f, 1e-12) ||
                f.norm() < 1e-14);
  }
}

TEST(Coriolis, BilinearIsPolarization) {
  const VehicleParams p = VehicleParams::boat();
  const Vector3 x(0.4, -1.1, 0.9);
  const Vector3 y(-0.2, 0.5, 2.0);
  const Vector3 polar = coriolis_force(p, x + y) - coriolis_force(p, x) - coriolis_force(p, y);
  EXPECT_TRUE(coriolis_bilinear(p, x, y).isApprox(polar, 1e-13));
  EXPECT_TRUE(coriolis_bilinear(p, x, y).isApprox(coriolis_bilinear(p, y, x)));
}

TEST(Dynamics, SurgeStep) {
  const VehicleParams p = VehicleParams::boat();
  VehicleState s;
  s.v.vx = 1.0;
  const StateRate r = dynamics_rhs(p, s, {2.0, 0.0});
  EXPECT_DOUBLE_EQ(r.q_dot(0), 1.0);
  EXPECT_DOUBLE_EQ(r.v_dot(0), (2.0 - 3.436) / 1.412);
  EXPECT_DOUBLE_EQ(r.v_dot(1), 0.0);
  EXPECT_DOUBLE_EQ(r.v_dot(2), 0.0);
}

TEST(Dynamics, PureTorqueSpinsInPlace) {
  const VehicleParams p = VehicleParams::boat();
  Eigen::Matrix<double, 6, 1> x0 = Eigen::Matrix<double, 6, 1>::Zero();
  const auto rhs = [&](double, const Vector6& x) {
    return dynamics_rhs(p, VehicleState::from_vector(x), {0.0, 1.0}).vector();
  };
  const auto h = integrate<6>(rhs, x0, {1e-2, 0.0, 20.0});
  const Vector6& xf = h.states.back();
  EXPECT_NEAR(xf(0), 0.0, 1e-12);
  EXPECT_NEAR(xf(1), 0.0, 1e-12);
  EXPECT_NEAR(xf(5), 1.0 / 0.864, 1e-6);
}

// dE/dt = v^T (G u - D v) along solutions, checked by integrating E in an
// augmented state.
TEST(Dynamics, EnergyBalance) {
  const VehicleParams p = VehicleParams::boat();
  const auto input = [](double t) { return ControlInput{std::cos(3.0 * t), 0.5 * std::sin(t)}; };
  using V7 = Eigen::Matrix<double, 7, 1>;
  const auto rhs = [&](double t, const V7& x) {
    const VehicleState s = VehicleState::from_vector(x.head<6>());
    const ControlInput u = input(t);
    const Vector3 v = s.v.vector();
    V7 out;
    out.head<6>() = dynamics_rhs(p, s, u).vector();
    out(6) = v.dot(input_matrix() * u.vector() - p.damping() * v);
    return out;
  };
  V7 x0 = V7::Zero();
  x0(3) = 0.5;
  x0(4) = -0.2;
  x0(5) = 0.8;
  x0(6) = kinetic_energy(p, BodyVelocity::from_vector(x0.segment<3>(3)));
  const auto h = integrate<7>(rhs, x0, {1e-3, 0.0, 10.0});
  for (std::size_t i = 0; i < h.states.size(); i += 500) {
    const V7& x = h.states[i];
    EXPECT_NEAR(kinetic_energy(p, BodyVelocity::from_vector(x.segment<3>(3))), x(6), 1e-9);
  }
}

TEST(State, VectorRoundTrip) {
  const VehicleState s{{1, 2, 3}, {4, 5, 6}};
  const VehicleState r = VehicleState::from_vector(s.vector());
  EXPECT_EQ(r.vector(), s.vector());
}

TEST(Kinematics, QuarterTurnRows) {
  const Matrix3 j = kinematic_matrix(std::numbers::pi / 2);
  Matrix3 expected;
  expected << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  EXPECT_LT((j - expected).norm(), 1e-15);
  EXPECT_EQ(kinematic_matrix(0.0), Matrix3::Identity());
}

TEST(Coriolis, EntriesAtOneTwoThree) {
  const Matrix3 c = coriolis(VehicleParams::boat(), {1.0, 2.0, 3.0});
  EXPECT_NEAR(c(0, 2), -3.964, 1e-12);
  EXPECT_EQ(c(1, 0), 0.0);
  EXPECT_NEAR(c(1, 2), 1.412, 1e-12);
  EXPECT_NEAR(c(2, 0), 3.964, 1e-12);
  EXPECT_NEAR(c(2, 1), -1.412, 1e-12);
}

TEST(Coriolis, PureYawHasNoCoriolis) {
  EXPECT_TRUE(coriolis(VehicleParams::boat(), {0.0, 0.0, 2.7}).isZero());
}

TEST(Dynamics, SpinningSteadyState) {
  const VehicleParams p = VehicleParams::boat();
  for (double c : {0.5, 1.0, 3.0}) {
    VehicleState s;
    s.q.theta = 0.7;
    s.v.omega = c / 0.864;
    const StateRate r = dynamics_rhs(p, s, {0.0, c});
    EXPECT_NEAR(r.v_dot.norm(), 0.0, 1e-14);
  }
  EXPECT_NEAR(1.0 / p.damping()(2, 2), 1.1574, 1e-4);
}

TEST(Dynamics, HeadingPeriodicity) {
  const VehicleParams p = VehicleParams::boat();
  const VehicleState a{{0.3, -0.2, 0.9}, {0.4, -0.1, 0.6}};
  VehicleState b = a;
  b.q.theta += 2.0 * std::numbers::pi;
  const ControlInput u{1.2, -0.4};
  const StateRate ra = dynamics_rhs(p, a, u);
  const StateRate rb = dynamics_rhs(p, b, u);
  EXPECT_EQ(ra.v_dot, rb.v_dot);
  EXPECT_TRUE(ra.q_dot.isApprox(rb.q_dot, 1e-14));
}

}  // namespace
}  // namespace surgeseek
