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

#ifndef SURGESEEK_DITHER_CONTROL_H_
#define SURGESEEK_DITHER_CONTROL_H_

#include <functional>
#include <string>
#include <vector>

#include "surgeseek/cost_fields.h"
#include "surgeseek/vehicle_model.h"

namespace surgeseek {

// Extremum seeking gains: surge gain k, constant yaw torque c, and the
// time-scale parameter epsilon (the dither runs at frequency 1/epsilon).
struct EsGains {
  double k = 1.0;
  double c = 1.0;
  double epsilon = 0.1;

  // Throws std::invalid_argument unless c, epsilon > 0 and k >= 0 (k = 0
  // disables seeking).
  void validate() const;
};

using ScalarSignal = std::function<double(double)>;

// A T-periodic scalar dither. `antiderivative`, when set, is the closed form
// of the integral of w from 0 to t; otherwise it is computed by quadrature.
struct Dither {
  std::string name;
  ScalarSignal w;
  double period = 0.0;
  ScalarSignal antiderivative;
};

// cos(n t) with period 2 pi and antiderivative sin(n t) / n.
Dither cosine_dither(int harmonic = 1);
// sin(t), period 2 pi. Zero mean but nonzero iterated mean: not admissible.
Dither sine_dither();
// Constant dither: nonzero mean, not admissible.
Dither constant_dither(double level = 1.0);

struct DitherValidation {
  bool passed = false;
  // |integral of w over one period|
  double mean_residual = 0.0;
  // |integral over one period of the running integral of w|
  double iterated_mean_residual = 0.0;
  // Simpson at N and N/2 panels agreed to within tol.
  bool converged = true;
};

// Composite-Simpson check of the two admissibility integrals. Passes iff
// both magnitudes are below `tol` and the quadrature converged.
DitherValidation validate_dither(const ScalarSignal& w, double period,
                                 double tol = 1e-8, int panels = 4096);

// Running integral of w sampled on a uniform grid of 2 * panels intervals
// over [0, period], accurate to O(h^4). Entry i is the integral up to
// i * period / (2 * panels).
std::vector<double> cumulative_integral(const ScalarSignal& w, double period,
                                        int panels = 4096);

// Composite Simpson for a function sampled at 2 * panels + 1 uniform nodes.
double simpson(const std::vector<double>& samples, double span);

// u1 = (k / eps) cos(t / eps) rho, u2 = c. Uses only the scalar measurement.
ControlInput es_control(const EsGains& gains, double rho_value, double t);

using InputShape = std::function<Vector2(const Configuration&)>;

struct DitherComponent {
  Dither dither;
  InputShape shape;  // b_i(q): (surge, yaw) contribution
};

struct DitherSet {
  Vector2 b0 = Vector2::Zero();
  std::vector<DitherComponent> components;
};

// u = b0 + (1 / eps) sum_i b_i(q) w_i(t / eps).
ControlInput general_input(const DitherSet& set, double epsilon, double t,
                           const Configuration& q);

// The seeking law as a single-component set: b0 = (0, c),
// b1(q) = (k rho(x, y), 0), w1 = cos.
DitherSet es_dither_set(const EsGains& gains, const CostField& cost);

}  // namespace surgeseek

#endif  // SURGESEEK_DITHER_CONTROL_H_
