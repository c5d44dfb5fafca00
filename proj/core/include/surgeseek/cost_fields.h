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

#ifndef SURGESEEK_COST_FIELDS_H_
#define SURGESEEK_COST_FIELDS_H_

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "surgeseek/vehicle_model.h"

namespace surgeseek {

// Nonnegative planar cost with a unique minimizer and an analytic gradient.
// The seeking controller only ever evaluates value(); gradient() exists for
// analysis and tests.
struct CostField {
  std::string name;
  std::function<double(double, double)> value;
  std::function<Vector2(double, double)> gradient;
  std::optional<Vector2> minimizer;

  double operator()(double x, double y) const { return value(x, y); }
};

// Parameters of a registered field, as read from a scenario file.
struct CostSpec {
  std::string name = "quadratic";
  double a = 1.0;
  double b = 0.5;
  double x_star = 2.0;
  double y_star = 3.0;
  double floor = 1.0;
  double angle = 0.0;  // rotated_quadratic only
};

// a (x - x*)^2 + b (y - y*)^2 + floor. Requires a, b > 0 and floor >= 0.
CostField quadratic_cost(double a, double b, double x_star, double y_star,
                         double floor);

// Quadratic bowl whose principal axes are rotated by `angle` radians.
CostField rotated_quadratic_cost(double a, double b, double angle,
                                 double x_star, double y_star, double floor);

// log(1 + a (x - x*)^2 + b (y - y*)^2) + floor: smooth, grows sub-quadratically.
CostField log_bowl_cost(double a, double b, double x_star, double y_star,
                        double floor);

// (x - 2)^2 + 0.5 (y - 3)^2 + 1.
CostField reference_cost();

// Looks up `spec.name` among quadratic, rotated_quadratic, log_bowl.
// Throws std::invalid_argument for unknown names or invalid parameters.
CostField make_cost(const CostSpec& spec);

std::vector<std::string> registered_cost_names();

// Worst relative error between the analytic gradient and a central
// difference with step `probe`, over `points`. The denominator is floored
// at 1 so points near the minimizer do not dominate.
double gradient_check(const CostField& field, std::span<const Vector2> points,
                      double probe);

struct GridExtremumReport {
  bool nonnegative = true;
  // Grid argmin is the grid node nearest the declared minimizer.
  bool minimum_at_minimizer = false;
  // The analytic gradient is nonzero at every node other than the argmin.
  bool gradient_nonvanishing = true;
  Vector2 grid_argmin = Vector2::Zero();
  double grid_min = 0.0;
};

// Samples an n x n grid over [lo, hi]^2.
GridExtremumReport check_extremum_on_grid(const CostField& field, double lo,
                                          double hi, int n);

}  // namespace surgeseek

#endif  // SURGESEEK_COST_FIELDS_H_
