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

#include "surgeseek/cost_fields.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace surgeseek {
namespace {

void check_bowl_params(double a, double b, double floor) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("cost curvatures a and b must be > 0");
  }
  if (!(floor >= 0.0)) {
    throw std::invalid_argument("cost floor must be >= 0");
  }
}

}  // namespace

CostField quadratic_cost(double a, double b, double x_star, double y_star,
                         double floor) {
  check_bowl_params(a, b, floor);
  CostField field;
  field.name = "quadratic";
  field.value = [=](double x, double y) {
    const double dx = x - x_star;
    const double dy = y - y_star;
    return a * dx * dx + b * dy * dy + floor;
  };
  field.gradient = [=](double x, double y) {
    return Vector2(2.0 * a * (x - x_star), 2.0 * b * (y - y_star));
  };
  field.minimizer = Vector2(x_star, y_star);
  return field;
}

CostField rotated_quadratic_cost(double a, double b, double angle,
                                 double x_star, double y_star, double floor) {
  check_bowl_params(a, b, floor);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  CostField field;
  field.name = "rotated_quadratic";
  // Coordinates along the rotated principal axes.
  field.value = [=](double x, double y) {
    const double dx = x - x_star;
    const double dy = y - y_star;
    const double p = c * dx + s * dy;
    const double r = -s * dx + c * dy;
    return a * p * p + b * r * r + floor;
  };
  field.gradient = [=](double x, double y) {
    const double dx = x - x_star;
    const double dy = y - y_star;
    const double p = c * dx + s * dy;
    const double r = -s * dx + c * dy;
    return Vector2(2.0 * a * p * c - 2.0 * b * r * s,
                   2.0 * a * p * s + 2.0 * b * r * c);
  };
  field.minimizer = Vector2(x_star, y_star);
  return field;
}

CostField log_bowl_cost(double a, double b, double x_star, double y_star,
                        double floor) {
  check_bowl_params(a, b, floor);
  CostField field;
  field.name = "log_bowl";
  field.value = [=](double x, double y) {
    const double dx = x - x_star;
    const double dy = y - y_star;
    return std::log1p(a * dx * dx + b * dy * dy) + floor;
  };
  field.gradient = [=](double x, double y) {
    const double dx = x - x_star;
    const double dy = y - y_star;
    const double inner = 1.0 + a * dx * dx + b * dy * dy;
    return Vector2(2.0 * a * dx / inner, 2.0 * b * dy / inner);
  };
  field.minimizer = Vector2(x_star, y_star);
  return field;
}

CostField reference_cost() { return quadratic_cost(1.0, 0.5, 2.0, 3.0, 1.0); }

CostField make_cost(const CostSpec& spec) {
  if (spec.name == "quadratic") {
    return quadratic_cost(spec.a, spec.b, spec.x_star, spec.y_star, spec.floor);
  }
  if (spec.name == "rotated_quadratic") {
    return rotated_quadratic_cost(spec.a, spec.b, spec.angle, spec.x_star,
                                  spec.y_star, spec.floor);
  }
  if (spec.name == "log_bowl") {
    return log_bowl_cost(spec.a, spec.b, spec.x_star, spec.y_star, spec.floor);
  }
  throw std::invalid_argument("unknown cost field '" + spec.name + "'");
}

std::vector<std::string> registered_cost_names() {
  return {"quadratic", "rotated_quadratic", "log_bowl"};
}

double gradient_check(const CostField& field, std::span<const Vector2> points,
                      double probe) {
  if (!(probe > 0.0)) throw std::invalid_argument("probe must be > 0");
  double worst = 0.0;
  for (const Vector2& p : points) {
    const double gx = (field(p.x() + probe, p.y()) - field(p.x() - probe, p.y())) /
                      (2.0 * probe);
    const double gy = (field(p.x(), p.y() + probe) - field(p.x(), p.y() - probe)) /
                      (2.0 * probe);
    const Vector2 analytic = field.gradient(p.x(), p.y());
    const double err = (Vector2(gx, gy) - analytic).norm() /
                       std::max(1.0, analytic.norm());
    worst = std::max(worst, err);
  }
  return worst;
}

GridExtremumReport check_extremum_on_grid(const CostField& field, double lo,
                                          double hi, int n) {
  if (n < 2 || !(hi > lo)) throw std::invalid_argument("bad grid");
  GridExtremumReport report;
  const double spacing = (hi - lo) / (n - 1);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = lo + i * spacing;
      const double y = lo + j * spacing;
      const double v = field(x, y);
      if (!(v >= 0.0)) report.nonnegative = false;
      if (v < best) {
        best = v;
        report.grid_argmin = Vector2(x, y);
      }
    }
  }
  report.grid_min = best;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vector2 node(lo + i * spacing, lo + j * spacing);
      if (node == report.grid_argmin) continue;
      if (field.gradient(node.x(), node.y()).norm() == 0.0) {
        report.gradient_nonvanishing = false;
      }
    }
  }
  if (field.minimizer) {
    const Vector2 m = *field.minimizer;
    const double nx = lo + std::round((m.x() - lo) / spacing) * spacing;
    const double ny = lo + std::round((m.y() - lo) / spacing) * spacing;
    report.minimum_at_minimizer =
        std::abs(report.grid_argmin.x() - nx) < 0.5 * spacing &&
        std::abs(report.grid_argmin.y() - ny) < 0.5 * spacing;
  }
  return report;
}

}  // namespace surgeseek
