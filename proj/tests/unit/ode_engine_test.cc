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

#include "surgeseek/ode_engine.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace surgeseek {
namespace {

using V1 = Eigen::Matrix<double, 1, 1>;
using V2 = Eigen::Vector2d;

double exp_error(double h) {
  const auto rhs = [](double, const V1& x) { return V1(x); };
  const auto hist = integrate<1>(rhs, V1(1.0), {h, 0.0, 1.0});
  return std::abs(hist.states.back()(0) - std::exp(1.0));
}

TEST(Rk4, FourthOrderOnExponential) {
  for (double h : {0.1, 0.05, 0.025}) {
    const double ratio = exp_error(h) / exp_error(h / 2);
    EXPECT_GE(ratio, 14.0) << "h=" << h;
    EXPECT_LE(ratio, 18.0) << "h=" << h;
  }
}

TEST(Rk4, ExactOnCubicPolynomialInTime) {
  const auto rhs = [](double t, const V1&) { return V1(3.0 * t * t); };
  const auto hist = integrate<1>(rhs, V1(0.0), {0.25, 0.0, 2.0});
  EXPECT_NEAR(hist.states.back()(0), 8.0, 1e-13);
}

TEST(Rk4, HarmonicOscillatorPeriod) {
  const auto rhs = [](double, const V2& x) { return V2(x(1), -x(0)); };
  const auto hist = integrate<2>(rhs, V2(1.0, 0.0), {2.0 * M_PI / 1000, 0.0, 2.0 * M_PI});
  EXPECT_NEAR(hist.states.back()(0), 1.0, 1e-10);
  EXPECT_NEAR(hist.states.back()(1), 0.0, 1e-10);
}

TEST(Integrate, RecordsEveryStep) {
  const auto rhs = [](double, const V1&) { return V1(1.0); };
  const auto hist = integrate<1>(rhs, V1(0.0), {0.1, 1.0, 2.0});
  ASSERT_EQ(hist.times.size(), 11u);
  EXPECT_DOUBLE_EQ(hist.times.front(), 1.0);
  EXPECT_DOUBLE_EQ(hist.times.back(), 2.0);
  EXPECT_NEAR(hist.states.back()(0), 1.0, 1e-14);
}

TEST(Integrate, DetectsBlowUp) {
  const auto rhs = [](double, const V1& x) { return V1(x(0) * x(0)); };
  try {
    integrate<1>(rhs, V1(1.0), {0.01, 0.0, 5.0});
    FAIL() << "expected IntegrationError";
  } catch (const IntegrationError& e) {
    EXPECT_GT(e.time(), 0.9);
    EXPECT_LT(e.time(), 1.5);
  }
}

TEST(Integrate, RejectsNonFiniteInitial) {
  const auto rhs = [](double, const V1& x) { return V1(x); };
  EXPECT_THROW(integrate<1>(rhs, V1(std::numeric_limits<double>::quiet_NaN()),
                            {0.1, 0.0, 1.0}),
               IntegrationError);
}

TEST(Integrate, Deterministic) {
  const auto rhs = [](double t, const V2& x) {
    return V2(x(1), -std::sin(x(0)) + 0.3 * std::cos(7.0 * t));
  };
  const auto a = integrate<2>(rhs, V2(0.1, 0.0), {1e-3, 0.0, 5.0});
  const auto b = integrate<2>(rhs, V2(0.1, 0.0), {1e-3, 0.0, 5.0});
  ASSERT_EQ(a.states.size(), b.states.size());
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    ASSERT_EQ(a.states[i](0), b.states[i](0));
    ASSERT_EQ(a.states[i](1), b.states[i](1));
  }
}

TEST(Settings, WithMaxStepDividesHorizon) {
  const IntegratorSettings s = IntegratorSettings::with_max_step(0.0, 100.0, 0.05 * 2 * M_PI / 200);
  EXPECT_LE(s.step, 0.05 * 2 * M_PI / 200);
  EXPECT_NEAR(s.time_at(s.step_count()), 100.0, 1e-9);
  const IntegratorSettings exact = IntegratorSettings::with_max_step(0.0, 1.0, 0.1);
  EXPECT_EQ(exact.step_count(), 10u);
}

TEST(Settings, RejectsBadSteps) {
  EXPECT_THROW(IntegratorSettings::with_max_step(0.0, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(IntegratorSettings::with_max_step(1.0, 1.0, 0.1), std::invalid_argument);
  EXPECT_THROW((IntegratorSettings{0.3, 0.0, 1.0}.step_count()), std::invalid_argument);
  EXPECT_THROW((IntegratorSettings{-0.1, 0.0, 1.0}.step_count()), std::invalid_argument);
}

TEST(Trajectory, InvariantChecks) {
  Trajectory t;
  t.times = {0.0, 0.1, 0.2};
  t.states.resize(3);
  t.inputs.resize(3);
  t.cost = {1, 1, 1};
  EXPECT_NO_THROW(t.check_invariants());
  EXPECT_NEAR(t.step(), 0.1, 1e-15);
  t.cost.pop_back();
  EXPECT_THROW(t.check_invariants(), std::logic_error);
  t.cost.push_back(1);
  t.times[2] = 0.35;
  EXPECT_THROW(t.check_invariants(), std::logic_error);
}

TEST(Integrate, ZeroFieldIsConstant) {
  const auto rhs = [](double, const V2&) { return V2::Zero().eval(); };
  const auto hist = integrate<2>(rhs, V2(1.5, -2.0), {0.1, 0.0, 3.0});
  for (const V2& x : hist.states) ASSERT_EQ(x, V2(1.5, -2.0));
}

TEST(Rk4, ExponentialAtFineStep) {
  EXPECT_LT(exp_error(1e-3), 1e-8);
}

TEST(Rk4, OscillatorEnergyDriftOverLongHorizon) {
  const auto rhs = [](double, const V2& x) { return V2(x(1), -x(0)); };
  const auto hist = integrate<2>(rhs, V2(1.0, 0.0), {1e-3, 0.0, 100.0});
  double drift = 0.0;
  for (const V2& x : hist.states) drift = std::max(drift, std::abs(0.5 * x.squaredNorm() - 0.5));
  EXPECT_LT(drift, 1e-6);
}

}  // namespace
}  // namespace surgeseek
