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

#include "surgeseek/dither_control.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace surgeseek {

void EsGains::validate() const {
  if (!(k >= 0.0) || !(c > 0.0) || !(epsilon > 0.0)) {
    throw std::invalid_argument("gains need k >= 0, c > 0 and epsilon > 0");
  }
}

Dither cosine_dither(int harmonic) {
  if (harmonic < 1) throw std::invalid_argument("harmonic must be >= 1");
  const double n = harmonic;
  return {harmonic == 1 ? "cos" : "cos" + std::to_string(harmonic) + "t",
          [n](double t) { return std::cos(n * t); }, 2.0 * std::numbers::pi,
          [n](double t) { return std::sin(n * t) / n; }};
}

Dither sine_dither() {
  return {"sin", [](double t) { return std::sin(t); }, 2.0 * std::numbers::pi,
          [](double t) { return 1.0 - std::cos(t); }};
}

Dither constant_dither(double level) {
  return {"const", [level](double) { return level; }, 2.0 * std::numbers::pi,
          [level](double t) { return level * t; }};
}

std::vector<double> cumulative_integral(const ScalarSignal& w, double period,
                                        int panels) {
  if (!(period > 0.0) || panels < 1) {
    throw std::invalid_argument("cumulative_integral: bad period or panels");
  }
  const int intervals = 2 * panels;
  const double h = period / intervals;
  std::vector<double> running(intervals + 1, 0.0);
  double left = w(0.0);
  for (int i = 1; i <= intervals; ++i) {
    const double a = (i - 1) * h;
    const double right = w(i * h);
    const double mid = w(a + 0.5 * h);
    running[i] = running[i - 1] + (h / 6.0) * (left + 4.0 * mid + right);
    left = right;
  }
  return running;
}

double simpson(const std::vector<double>& samples, double span) {
  const std::size_t intervals = samples.size() - 1;
  if (samples.size() < 3 || intervals % 2 != 0) {
    throw std::invalid_argument("simpson needs an even number of intervals");
  }
  const double h = span / static_cast<double>(intervals);
  double sum = samples.front() + samples.back();
  for (std::size_t i = 1; i < intervals; ++i) {
    sum += (i % 2 == 1 ? 4.0 : 2.0) * samples[i];
  }
  return sum * h / 3.0;
}

namespace {

struct AdmissibilityIntegrals {
  double mean;
  double iterated;
};

AdmissibilityIntegrals admissibility_integrals(const ScalarSignal& w,
                                               double period, int panels) {
  const std::vector<double> running = cumulative_integral(w, period, panels);
  return {running.back(), simpson(running, period)};
}

}  // namespace

DitherValidation validate_dither(const ScalarSignal& w, double period,
                                 double tol, int panels) {
  if (!(period > 0.0)) throw std::invalid_argument("period must be > 0");
  if (panels < 2 || panels % 2 != 0) {
    throw std::invalid_argument("panels must be even and >= 2");
  }
  DitherValidation result;
  const AdmissibilityIntegrals fine = admissibility_integrals(w, period, panels);
  const AdmissibilityIntegrals coarse =
      admissibility_integrals(w, period, panels / 2);
  result.mean_residual = std::abs(fine.mean);
  result.iterated_mean_residual = std::abs(fine.iterated);
  if (!std::isfinite(fine.mean) || !std::isfinite(fine.iterated) ||
      std::abs(fine.mean - coarse.mean) > tol ||
      std::abs(fine.iterated - coarse.iterated) > tol) {
    result.converged = false;
  }
  result.passed = result.converged && result.mean_residual < tol &&
                  result.iterated_mean_residual < tol;
  return result;
}

ControlInput es_control(const EsGains& gains, double rho_value, double t) {
  if (!(rho_value >= 0.0)) {
    throw std::invalid_argument("cost measurement must be >= 0");
  }
  // Same operation order as general_input so the two agree bit for bit.
  const double tau = t / gains.epsilon;
  return {(gains.k * rho_value * std::cos(tau)) / gains.epsilon, gains.c};
}

ControlInput general_input(const DitherSet& set, double epsilon, double t,
                           const Configuration& q) {
  Vector2 u = set.b0;
  const double tau = t / epsilon;
  for (const DitherComponent& component : set.components) {
    u += (component.shape(q) * component.dither.w(tau)) / epsilon;
  }
  return ControlInput::from_vector(u);
}

DitherSet es_dither_set(const EsGains& gains, const CostField& cost) {
  DitherSet set;
  set.b0 = Vector2(0.0, gains.c);
  const double k = gains.k;
  set.components.push_back(
      {cosine_dither(1), [k, cost](const Configuration& q) {
         return Vector2(k * cost(q.x, q.y), 0.0);
       }});
  return set;
}

}  // namespace surgeseek
