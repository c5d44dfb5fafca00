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

#include "surgeseek/averaging_core.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace surgeseek {

Matrix3 ConfigVectorField::jacobian_at(const Configuration& q,
                                       double probe) const {
  if (jacobian) return jacobian(q);
  const Vector3 base = q.vector();
  Matrix3 jac;
  for (int j = 0; j < 3; ++j) {
    const double h = probe * (1.0 + std::abs(base(j)));
    Vector3 plus = base;
    Vector3 minus = base;
    plus(j) += h;
    minus(j) -= h;
    jac.col(j) = (value(Configuration::from_vector(plus)) -
                  value(Configuration::from_vector(minus))) /
                 (2.0 * h);
  }
  return jac;
}

Eigen::MatrixXd numeric_jacobian(const StateField& field,
                                 const Eigen::VectorXd& point, double probe) {
  if (!(probe > 0.0)) throw std::invalid_argument("probe must be > 0");
  const Eigen::Index n = point.size();
  Eigen::MatrixXd jac;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double h = probe * (1.0 + std::abs(point(j)));
    const auto shifted = [&](double offset) {
      Eigen::VectorXd x = point;
      x(j) += offset;
      return field(x);
    };
    const Eigen::VectorXd column =
        (8.0 * (shifted(h) - shifted(-h)) - (shifted(2.0 * h) - shifted(-2.0 * h))) /
        (12.0 * h);
    if (j == 0) jac.resize(column.size(), n);
    jac.col(j) = column;
  }
  return jac;
}

Eigen::VectorXd lie_bracket(const StateField& first, const StateField& second,
                            const Eigen::VectorXd& point, double probe,
                            const std::string& first_name,
                            const std::string& second_name) {
  const Eigen::VectorXd a = first(point);
  if (!a.allFinite()) {
    throw std::domain_error("lie_bracket: field '" + first_name +
                            "' is not finite at the evaluation point");
  }
  const Eigen::VectorXd b = second(point);
  if (!b.allFinite()) {
    throw std::domain_error("lie_bracket: field '" + second_name +
                            "' is not finite at the evaluation point");
  }
  const Eigen::MatrixXd da = numeric_jacobian(first, point, probe);
  if (!da.allFinite()) {
    throw std::domain_error("lie_bracket: field '" + first_name +
                            "' is not finite near the evaluation point");
  }
  const Eigen::MatrixXd db = numeric_jacobian(second, point, probe);
  if (!db.allFinite()) {
    throw std::domain_error("lie_bracket: field '" + second_name +
                            "' is not finite near the evaluation point");
  }
  return db * a - da * b;
}

Vector3 velocity_drift(const VehicleParams& params, const Vector2& b0,
                       const Vector3& v) {
  return -params.inertia_inverse() *
         (coriolis_force(params, v) + params.damping() * v - input_matrix() * b0);
}

Vector3 symmetric_product(const ConfigVectorField& x,
                          const ConfigVectorField& y,
                          const VehicleParams& params, const Vector2& /*b0*/,
                          const Configuration& q) {
  const Matrix3 j = kinematic_matrix(q.theta);
  const Vector3 xv = x(q);
  const Vector3 yv = y(q);
  const Vector3 transport =
      x.jacobian_at(q) * (j * yv) + y.jacobian_at(q) * (j * xv);
  return transport + params.inertia_inverse() * coriolis_bilinear(params, xv, yv);
}

ConfigVectorField es_input_field(const VehicleParams& params,
                                 const CostField& cost, double k) {
  const double scale = k / params.m11();
  ConfigVectorField field;
  field.value = [scale, cost](const Configuration& q) {
    return Vector3(scale * cost(q.x, q.y), 0.0, 0.0);
  };
  field.jacobian = [scale, cost](const Configuration& q) {
    const Vector2 g = cost.gradient(q.x, q.y);
    Matrix3 jac = Matrix3::Zero();
    jac(0, 0) = scale * g.x();
    jac(0, 1) = scale * g.y();
    return jac;
  };
  return field;
}

Vector3 es_symmetric_product(const VehicleParams& params,
                             const CostField& cost, double k,
                             const Configuration& q) {
  const double scale = k / params.m11();
  const Vector2 g = cost.gradient(q.x, q.y);
  const double heading_slope = g.x() * std::cos(q.theta) + g.y() * std::sin(q.theta);
  return Vector3(2.0 * scale * scale * cost(q.x, q.y) * heading_slope, 0.0, 0.0);
}

std::vector<ConfigVectorField> input_fields(const DitherSet& set,
                                            const VehicleParams& params) {
  std::vector<ConfigVectorField> fields;
  fields.reserve(set.components.size());
  const Matrix3 m_inv = params.inertia_inverse();
  for (const DitherComponent& component : set.components) {
    InputShape shape = component.shape;
    fields.push_back({[m_inv, shape](const Configuration& q) {
                        return Vector3(m_inv * input_matrix() * shape(q));
                      },
                      {}});
  }
  return fields;
}

LambdaMatrix lambda_matrix(const std::vector<Dither>& dithers, int panels) {
  if (dithers.empty()) return {Eigen::MatrixXd(0, 0)};
  const double period = dithers.front().period;
  for (const Dither& d : dithers) {
    if (std::abs(d.period - period) > 1e-12 * period) {
      throw std::invalid_argument("lambda_matrix: dither periods differ");
    }
    if (!validate_dither(d.w, d.period).passed) {
      throw std::invalid_argument("lambda_matrix: dither '" + d.name +
                                  "' is not admissible");
    }
  }
  std::vector<std::vector<double>> running;
  running.reserve(dithers.size());
  for (const Dither& d : dithers) {
    running.push_back(cumulative_integral(d.w, period, panels));
  }
  const int m = static_cast<int>(dithers.size());
  LambdaMatrix lambda{Eigen::MatrixXd::Zero(m, m)};
  std::vector<double> product(running.front().size());
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      for (std::size_t n = 0; n < product.size(); ++n) {
        product[n] = running[i][n] * running[j][n];
      }
      const double value = simpson(product, period) / (2.0 * period);
      lambda.entries(i, j) = value;
      lambda.entries(j, i) = value;
    }
  }
  return lambda;
}

LambdaMatrix lambda_matrix(const DitherSet& set, int panels) {
  std::vector<Dither> dithers;
  dithers.reserve(set.components.size());
  for (const DitherComponent& c : set.components) dithers.push_back(c.dither);
  return lambda_matrix(dithers, panels);
}

Vector3 averaged_forcing(const VehicleParams& params, const Vector2& b0,
                         const std::vector<ConfigVectorField>& fields,
                         const LambdaMatrix& lambda, const Configuration& q) {
  if (lambda.size() != static_cast<int>(fields.size())) {
    throw std::invalid_argument("lambda dimension does not match field count");
  }
  Vector3 forcing = Vector3::Zero();
  const int m = lambda.size();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (lambda(i, j) == 0.0) continue;
      forcing -= lambda(i, j) * symmetric_product(fields[i], fields[j], params, b0, q);
    }
  }
  return forcing;
}

StateRate averaged_rhs(const VehicleParams& params, const Vector2& b0,
                       const std::vector<ConfigVectorField>& fields,
                       const LambdaMatrix& lambda, const AveragedState& state) {
  const Vector3 v = state.v.vector();
  StateRate rate;
  rate.q_dot = kinematic_matrix(state.q.theta) * v;
  rate.v_dot = velocity_drift(params, b0, v) +
               averaged_forcing(params, b0, fields, lambda, state.q);
  return rate;
}

Vector3 xi_field(const DitherSet& set, const VehicleParams& params, double tau,
                 const Configuration& q) {
  Vector3 xi = Vector3::Zero();
  const Matrix3 m_inv = params.inertia_inverse();
  for (const DitherComponent& component : set.components) {
    const Dither& d = component.dither;
    double integral = 0.0;
    if (d.antiderivative) {
      integral = d.antiderivative(tau) - d.antiderivative(0.0);
    } else {
      const double reduced = tau - d.period * std::floor(tau / d.period);
      if (reduced > 0.0) {
        constexpr int kPanels = 512;
        integral = cumulative_integral(d.w, reduced, kPanels).back();
      }
    }
    xi += integral * (m_inv * input_matrix() * component.shape(q));
  }
  return xi;
}

BodyVelocity reconstruct_velocity(const BodyVelocity& vhat, const Vector3& xi) {
  return BodyVelocity::from_vector(vhat.vector() + xi);
}

StateField closed_loop_drift(const VehicleParams& params, const Vector2& b0) {
  return [params, b0](const Eigen::VectorXd& s) {
    Eigen::VectorXd out(6);
    const Vector3 v = s.segment<3>(3);
    out.head<3>() = kinematic_matrix(s(2)) * v;
    out.tail<3>() = velocity_drift(params, b0, v);
    return out;
  };
}

StateField closed_loop_input(const VehicleParams& params, const DitherSet& set,
                             double tau) {
  const std::vector<ConfigVectorField> fields = input_fields(set, params);
  std::vector<double> weights;
  for (const DitherComponent& c : set.components) weights.push_back(c.dither.w(tau));
  return [fields, weights](const Eigen::VectorXd& s) {
    const Configuration q{s(0), s(1), s(2)};
    Eigen::VectorXd out = Eigen::VectorXd::Zero(6);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      out.tail<3>() += weights[i] * fields[i](q);
    }
    return out;
  };
}

StateField double_integrator_drift() {
  return [](const Eigen::VectorXd& z) {
    Eigen::VectorXd out(2);
    out << z(1), -z(1);
    return out;
  };
}

StateField double_integrator_input(const ScalarSignal& k) {
  return [k](const Eigen::VectorXd& z) {
    Eigen::VectorXd out(2);
    out << 0.0, k(z(0));
    return out;
  };
}

ScalarCost shifted_parabola() {
  return {[](double x) { return (x - 1.0) * (x - 1.0) + 1.0; },
          [](double x) { return 2.0 * (x - 1.0); }, 1.0};
}

DoubleIntegratorReport double_integrator_demo(
    const DoubleIntegratorConfig& config) {
  if (!(config.omega > 0.0) || !(config.horizon > 0.0) ||
      config.samples_per_period < 1) {
    throw std::invalid_argument("double integrator: need omega, horizon > 0");
  }
  const ScalarCost cost = config.cost;
  const double alpha = config.alpha;
  const double omega = config.omega;
  const double period = 2.0 * std::numbers::pi / omega;
  const IntegratorSettings settings = IntegratorSettings::with_max_step(
      0.0, config.horizon, period / config.samples_per_period);

  using State = Eigen::Vector2d;
  auto full_rhs = [&](double t, const State& s) {
    return State(s(1), -s(1) + cost.value(s(0)) * alpha * omega * std::cos(omega * t));
  };
  auto averaged_rhs_di = [&](double, const State& z) {
    const double pull = 0.25 * alpha * alpha * 2.0 * cost.value(z(0)) *
                        cost.derivative(z(0));
    return State(z(1), -z(1) - pull);
  };

  DoubleIntegratorReport report;
  report.full = integrate<2>(full_rhs, config.initial, settings);
  report.averaged = integrate<2>(averaged_rhs_di, config.initial, settings);
  for (std::size_t n = 0; n < report.full.states.size(); ++n) {
    report.sup_deviation =
        std::max(report.sup_deviation,
                 std::abs(report.full.states[n](0) - report.averaged.states[n](0)));
  }
  report.final_error = std::abs(report.full.states.back()(0) - cost.minimizer);
  report.averaged_final_error =
      std::abs(report.averaged.states.back()(0) - cost.minimizer);

  const std::size_t window = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(period / settings.step)));
  const std::size_t count = report.full.states.size();
  const std::size_t begin = count > window ? count - window : 0;
  double mean = 0.0;
  for (std::size_t n = begin; n < count; ++n) mean += report.full.states[n](0);
  mean /= static_cast<double>(count - begin);
  report.period_averaged_final_error = std::abs(mean - cost.minimizer);
  return report;
}

}  // namespace surgeseek
