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

#include "surgeseek/scenario.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "surgeseek/passivity.h"

namespace surgeseek {
namespace {

void reject_unknown(const YAML::Node& node, const std::string& section,
                    const std::set<std::string>& allowed) {
  for (const auto& entry : node) {
    const std::string key = entry.first.as<std::string>();
    if (!allowed.contains(key)) {
      throw ScenarioError("unknown key '" + key + "' in section '" + section + "'");
    }
  }
}

double read_number(const YAML::Node& node, const std::string& section,
                   const std::string& key, double fallback) {
  const YAML::Node value = node[key];
  if (!value) return fallback;
  try {
    return value.as<double>();
  } catch (const YAML::Exception&) {
    throw ScenarioError("value of " + section + "." + key + " is not a number");
  }
}

YAML::Node section(const YAML::Node& root, const std::string& name,
                   const std::set<std::string>& allowed) {
  YAML::Node node = root[name];
  if (!node || node.IsNull()) return YAML::Node(YAML::NodeType::Undefined);
  if (!node.IsMap()) throw ScenarioError("section '" + name + "' must be a map");
  reject_unknown(node, name, allowed);
  return node;
}

}  // namespace

double Scenario::dither_period() const {
  return 2.0 * std::numbers::pi * gains.epsilon;
}

double Scenario::max_full_step() const {
  return dither_period() / samples_per_period;
}

std::vector<std::string> Scenario::check() const {
  try {
    gains.validate();
    (void)make_cost(cost);
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(e.what());
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw ScenarioError("run.horizon must be > 0");
  }
  if (samples_per_period < 50) {
    throw ScenarioError("run.samples_per_period must be >= 50");
  }
  if (!initial.q.finite() || !initial.v.finite()) {
    throw ScenarioError("initial state must be finite");
  }
  std::vector<std::string> warnings;
  if (vehicle.damping_is_diagonal()) {
    const double bound = c_hat_bound(vehicle);
    if (gains.c >= bound) {
      std::ostringstream msg;
      msg << "torque c=" << gains.c << " is not below c_hat=" << bound
          << "; shifted passivity is not guaranteed";
      warnings.push_back(msg.str());
    }
  } else if (!monotonicity_check(vehicle, gains.c)) {
    std::ostringstream msg;
    msg << "torque c=" << gains.c
        << " fails the monotonicity test; shifted passivity is not guaranteed";
    warnings.push_back(msg.str());
  }
  return warnings;
}

double default_horizon(double epsilon) { return epsilon >= 0.05 ? 100.0 : 150.0; }

Scenario reference_scenario(double epsilon) {
  Scenario s;
  s.gains.epsilon = epsilon;
  s.horizon = default_horizon(epsilon);
  return s;
}

Scenario parse_scenario(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ScenarioError(std::string("malformed scenario: ") + e.what());
  }
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  if (!root.IsMap()) throw ScenarioError("scenario must be a map of sections");
  reject_unknown(root, "<root>", {"vehicle", "cost", "gains", "initial", "run"});

  Scenario s = reference_scenario();

  const YAML::Node vehicle = section(
      root, "vehicle", {"m11", "m22", "m33", "d11", "d22", "d33", "d12", "d13", "d23"});
  if (vehicle) {
    const auto num = [&](const char* key, double fallback) {
      return read_number(vehicle, "vehicle", key, fallback);
    };
    const Matrix3& d0 = s.vehicle.damping();
    Matrix3 d;
    d(0, 0) = num("d11", d0(0, 0));
    d(1, 1) = num("d22", d0(1, 1));
    d(2, 2) = num("d33", d0(2, 2));
    d(0, 1) = d(1, 0) = num("d12", 0.0);
    d(0, 2) = d(2, 0) = num("d13", 0.0);
    d(1, 2) = d(2, 1) = num("d23", 0.0);
    try {
      s.vehicle = VehicleParams(num("m11", s.vehicle.m11()), num("m22", s.vehicle.m22()),
                                num("m33", s.vehicle.m33()), d);
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(std::string("vehicle: ") + e.what());
    }
  }

  const YAML::Node cost =
      section(root, "cost", {"name", "a", "b", "x_star", "y_star", "floor", "angle"});
  if (cost) {
    if (cost["name"]) s.cost.name = cost["name"].as<std::string>();
    s.cost.a = read_number(cost, "cost", "a", s.cost.a);
    s.cost.b = read_number(cost, "cost", "b", s.cost.b);
    s.cost.x_star = read_number(cost, "cost", "x_star", s.cost.x_star);
    s.cost.y_star = read_number(cost, "cost", "y_star", s.cost.y_star);
    s.cost.floor = read_number(cost, "cost", "floor", s.cost.floor);
    s.cost.angle = read_number(cost, "cost", "angle", s.cost.angle);
  }

  const YAML::Node gains = section(root, "gains", {"k", "c", "epsilon"});
  bool horizon_given = false;
  if (gains) {
    s.gains.k = read_number(gains, "gains", "k", s.gains.k);
    s.gains.c = read_number(gains, "gains", "c", s.gains.c);
    s.gains.epsilon = read_number(gains, "gains", "epsilon", s.gains.epsilon);
  }

  const YAML::Node initial =
      section(root, "initial", {"x", "y", "theta", "vx", "vy", "omega"});
  if (initial) {
    s.initial.q.x = read_number(initial, "initial", "x", 0.0);
    s.initial.q.y = read_number(initial, "initial", "y", 0.0);
    s.initial.q.theta = read_number(initial, "initial", "theta", 0.0);
    s.initial.v.vx = read_number(initial, "initial", "vx", 0.0);
    s.initial.v.vy = read_number(initial, "initial", "vy", 0.0);
    s.initial.v.omega = read_number(initial, "initial", "omega", 0.0);
  }

  const YAML::Node run =
      section(root, "run", {"horizon", "samples_per_period", "output_dir", "write_metadata"});
  if (run) {
    if (run["horizon"]) {
      s.horizon = read_number(run, "run", "horizon", s.horizon);
      horizon_given = true;
    }
    if (run["samples_per_period"]) {
      const double spp = read_number(run, "run", "samples_per_period", 200.0);
      if (spp != std::floor(spp)) {
        throw ScenarioError("run.samples_per_period must be an integer");
      }
      s.samples_per_period = static_cast<int>(spp);
    }
    if (run["output_dir"]) s.outputs.directory = run["output_dir"].as<std::string>();
    if (run["write_metadata"]) s.outputs.write_metadata = run["write_metadata"].as<bool>();
  }
  if (!horizon_given) s.horizon = default_horizon(s.gains.epsilon);
  (void)s.check();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string scenario_to_yaml(const Scenario& s) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  const Matrix3& d = s.vehicle.damping();
  out << YAML::BeginMap;
  out << YAML::Key << "vehicle" << YAML::Value << YAML::BeginMap
      << YAML::Key << "m11" << YAML::Value << s.vehicle.m11()
      << YAML::Key << "m22" << YAML::Value << s.vehicle.m22()
      << YAML::Key << "m33" << YAML::Value << s.vehicle.m33()
      << YAML::Key << "d11" << YAML::Value << d(0, 0)
      << YAML::Key << "d22" << YAML::Value << d(1, 1)
      << YAML::Key << "d33" << YAML::Value << d(2, 2);
  if (!s.vehicle.damping_is_diagonal()) {
    out << YAML::Key << "d12" << YAML::Value << d(0, 1)
        << YAML::Key << "d13" << YAML::Value << d(0, 2)
        << YAML::Key << "d23" << YAML::Value << d(1, 2);
  }
  out << YAML::EndMap;
  out << YAML::Key << "cost" << YAML::Value << YAML::BeginMap
      << YAML::Key << "name" << YAML::Value << s.cost.name
      << YAML::Key << "a" << YAML::Value << s.cost.a
      << YAML::Key << "b" << YAML::Value << s.cost.b
      << YAML::Key << "x_star" << YAML::Value << s.cost.x_star
      << YAML::Key << "y_star" << YAML::Value << s.cost.y_star
      << YAML::Key << "floor" << YAML::Value << s.cost.floor
      << YAML::Key << "angle" << YAML::Value << s.cost.angle << YAML::EndMap;
  out << YAML::Key << "gains" << YAML::Value << YAML::BeginMap
      << YAML::Key << "k" << YAML::Value << s.gains.k
      << YAML::Key << "c" << YAML::Value << s.gains.c
      << YAML::Key << "epsilon" << YAML::Value << s.gains.epsilon << YAML::EndMap;
  out << YAML::Key << "initial" << YAML::Value << YAML::BeginMap
      << YAML::Key << "x" << YAML::Value << s.initial.q.x
      << YAML::Key << "y" << YAML::Value << s.initial.q.y
      << YAML::Key << "theta" << YAML::Value << s.initial.q.theta
      << YAML::Key << "vx" << YAML::Value << s.initial.v.vx
      << YAML::Key << "vy" << YAML::Value << s.initial.v.vy
      << YAML::Key << "omega" << YAML::Value << s.initial.v.omega << YAML::EndMap;
  out << YAML::Key << "run" << YAML::Value << YAML::BeginMap
      << YAML::Key << "horizon" << YAML::Value << s.horizon
      << YAML::Key << "samples_per_period" << YAML::Value << s.samples_per_period
      << YAML::Key << "output_dir" << YAML::Value << s.outputs.directory
      << YAML::Key << "write_metadata" << YAML::Value << s.outputs.write_metadata
      << YAML::EndMap;
  out << YAML::EndMap;
  return out.c_str();
}

std::filesystem::path resolve_output_dir(const Scenario& scenario) {
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') {
    return std::filesystem::path(env);
  }
  return std::filesystem::path(scenario.outputs.directory);
}

}  // namespace surgeseek
