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

#ifndef SURGESEEK_SCENARIO_H_
#define SURGESEEK_SCENARIO_H_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "surgeseek/cost_fields.h"
#include "surgeseek/dither_control.h"
#include "surgeseek/vehicle_model.h"

namespace surgeseek {

// Overrides run.output_dir when set.
inline constexpr const char* kOutputDirEnv = "SURGESEEK_OUTPUT_DIR";

// Declared operationalizations of the O(epsilon) neighbourhood. These are
// chosen constants, echoed into run metadata.
inline constexpr double kFinalErrorThresholdCoarse = 0.5;  // epsilon = 0.1
inline constexpr double kFinalErrorThresholdFine = 0.3;    // epsilon = 0.05
inline constexpr double kDeviationRatioLow = 1.5;
inline constexpr double kDeviationRatioHigh = 3.0;
inline constexpr double kConvergenceRadius = 0.5;

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OutputOptions {
  std::string directory = "out";
  bool write_metadata = true;
};

struct Scenario {
  VehicleParams vehicle = VehicleParams::boat();
  CostSpec cost;
  EsGains gains{1.0, 1.0, 0.05};
  VehicleState initial;
  double horizon = 100.0;
  int samples_per_period = 200;
  OutputOptions outputs;

  // One dither period in simulation time, 2 pi epsilon.
  double dither_period() const;
  // epsilon 2 pi / samples_per_period.
  double max_full_step() const;

  // Throws ScenarioError on hard violations (gains, horizon, sampling,
  // cost parameters). Returns soft warnings, currently c >= c_hat.
  std::vector<std::string> check() const;
};

// 100 s for epsilon >= 0.05, 150 s otherwise.
double default_horizon(double epsilon);

// Boat at rest at the origin, reference cost, c = 1, k = 1.
Scenario reference_scenario(double epsilon = 0.05);

// YAML with sections vehicle, cost, gains, initial, run. Missing keys keep
// the reference values; unknown keys are rejected. Throws ScenarioError.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);

std::string scenario_to_yaml(const Scenario& scenario);

// run.output_dir, unless SURGESEEK_OUTPUT_DIR is set.
std::filesystem::path resolve_output_dir(const Scenario& scenario);

}  // namespace surgeseek

#endif  // SURGESEEK_SCENARIO_H_
