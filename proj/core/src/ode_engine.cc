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

#include <cmath>
#include <limits>

namespace surgeseek {

IntegratorSettings IntegratorSettings::with_max_step(double t0, double tf,
                                                     double max_step) {
  if (!(max_step > 0.0) || !(tf > t0)) {
    throw std::invalid_argument("with_max_step: need max_step > 0 and tf > t0");
  }
  const double span = tf - t0;
  // Guard against round-off pushing an exact ratio up by one step.
  const double ratio = span / max_step;
  double count = std::ceil(ratio - 1e-9 * ratio);
  if (count < 1.0) count = 1.0;
  IntegratorSettings settings;
  settings.t0 = t0;
  settings.tf = tf;
  settings.step = span / count;
  return settings;
}

std::size_t IntegratorSettings::step_count() const {
  if (!std::isfinite(step) || !std::isfinite(t0) || !std::isfinite(tf)) {
    throw std::invalid_argument("integrator settings must be finite");
  }
  if (!(step > 0.0) || step > tf - t0) {
    throw std::invalid_argument("integrator step must satisfy 0 < h <= tf - t0");
  }
  const double ratio = (tf - t0) / step;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * rounded ||
      rounded > static_cast<double>(std::numeric_limits<std::size_t>::max() / 2)) {
    throw std::invalid_argument(
        "integration horizon is not an integer number of steps");
  }
  return static_cast<std::size_t>(rounded);
}

double Trajectory::step() const {
  if (times.size() < 2) return 0.0;
  return times[1] - times[0];
}

void Trajectory::check_invariants() const {
  const std::size_t n = times.size();
  if (states.size() != n || inputs.size() != n || cost.size() != n) {
    throw std::logic_error("trajectory arrays have unequal lengths");
  }
  if (n < 2) return;
  const double h = times[1] - times[0];
  if (!(h > 0.0)) throw std::logic_error("trajectory times not increasing");
  for (std::size_t i = 1; i < n; ++i) {
    const double d = times[i] - times[i - 1];
    if (!(d > 0.0) || std::abs(d - h) > 1e-9 * std::max(1.0, std::abs(times[i]))) {
      throw std::logic_error("trajectory time grid is not uniform");
    }
  }
}

}  // namespace surgeseek
