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

#include <gtest/gtest.h>

#include <cstdlib>
#include <string>

#include "surgeseek/passivity.h"

namespace surgeseek {
namespace {

TEST(Scenario, ReferenceDefaults) {
  const Scenario s = reference_scenario();
  EXPECT_DOUBLE_EQ(s.gains.epsilon, 0.05);
  EXPECT_DOUBLE_EQ(s.gains.k, 1.0);
  EXPECT_DOUBLE_EQ(s.gains.c, 1.0);
  EXPECT_DOUBLE_EQ(s.horizon, 100.0);
  EXPECT_EQ(s.samples_per_period, 200);
  EXPECT_TRUE(s.check().empty());
  EXPECT_NEAR(s.dither_period(), 0.1 * M_PI, 1e-15);
  EXPECT_NEAR(s.max_full_step(), 0.1 * M_PI / 200, 1e-15);
}

TEST(Scenario, DefaultHorizon) {
  EXPECT_EQ(default_horizon(0.1), 100.0);
  EXPECT_EQ(default_horizon(0.05), 100.0);
  EXPECT_EQ(default_horizon(0.02), 150.0);
  EXPECT_EQ(reference_scenario(0.02).horizon, 150.0);
}

TEST(Scenario, LoadsReferenceFile) {
  const Scenario s = load_scenario(std::string(SURGESEEK_TEST_DATA_DIR) + "/reference.yaml");
  const Scenario r = reference_scenario();
  EXPECT_EQ(s.vehicle.damping(), r.vehicle.damping());
  EXPECT_EQ(s.vehicle.m22(), r.vehicle.m22());
  EXPECT_EQ(s.gains.epsilon, 0.05);
  EXPECT_EQ(s.horizon, 100.0);
  EXPECT_EQ(s.cost.name, "quadratic");
  EXPECT_EQ(s.outputs.directory, "out");
}

TEST(Scenario, PartialFileKeepsDefaults) {
  const Scenario s = parse_scenario("gains:\n  epsilon: 0.02\n");
  EXPECT_EQ(s.gains.epsilon, 0.02);
  EXPECT_EQ(s.gains.k, 1.0);
  EXPECT_EQ(s.horizon, 150.0);
  const Scenario e = parse_scenario("");
  EXPECT_EQ(e.gains.epsilon, 0.05);
}

TEST(Scenario, ExplicitHorizonWins) {
  const Scenario s = parse_scenario("gains: {epsilon: 0.02}\nrun: {horizon: 30}\n");
  EXPECT_EQ(s.horizon, 30.0);
}

TEST(Scenario, CoupledDamping) {
  const Scenario s = parse_scenario("vehicle: {d12: 0.4}\n");
  EXPECT_FALSE(s.vehicle.damping_is_diagonal());
  EXPECT_EQ(s.vehicle.damping()(1, 0), 0.4);
}

TEST(Scenario, ParseErrors) {
  const char* bad[] = {
      "gains: {k: 1, speed: 3}\n",
      "unknown_section: {}\n",
      "gains: {epsilon: -0.1}\n",
      "gains: {c: 0}\n",
      "gains: {k: abc}\n",
      "run: {horizon: 0}\n",
      "run: {samples_per_period: 20}\n",
      "run: {samples_per_period: 100.5}\n",
      "vehicle: {m11: -1}\n",
      "vehicle: {d12: 100}\n",
      "cost: {name: saddle}\n",
      "cost: {a: 0}\n",
      "gains: [1, 2]\n",
      "- just\n- a list\n",
      "gains: {k: 1\n",
  };
  for (const char* text : bad) {
    EXPECT_THROW(parse_scenario(text), ScenarioError) << text;
  }
  EXPECT_THROW(load_scenario("/nonexistent/scenario.yaml"), ScenarioError);
}

TEST(Scenario, WarnsAboveCHat) {
  Scenario s = reference_scenario();
  s.gains.c = 25.0;
  const auto warnings = s.check();
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings.front().find("c_hat"), std::string::npos);
  EXPECT_NO_THROW(parse_scenario("gains: {c: 25}\n"));
}

TEST(Scenario, YamlRoundTrip) {
  Scenario s = reference_scenario(0.1);
  s.gains.k = 1.5;
  s.initial.q.theta = 0.3;
  s.cost.name = "log_bowl";
  s.outputs.directory = "elsewhere";
  const Scenario r = parse_scenario(scenario_to_yaml(s));
  EXPECT_EQ(r.gains.k, 1.5);
  EXPECT_EQ(r.gains.epsilon, 0.1);
  EXPECT_EQ(r.initial.q.theta, 0.3);
  EXPECT_EQ(r.cost.name, "log_bowl");
  EXPECT_EQ(r.horizon, s.horizon);
  EXPECT_EQ(r.outputs.directory, "elsewhere");
  EXPECT_EQ(scenario_to_yaml(r), scenario_to_yaml(s));
}

TEST(Scenario, OutputDirOverride) {
  Scenario s = reference_scenario();
  s.outputs.directory = "from_file";
  unsetenv(kOutputDirEnv);
  EXPECT_EQ(resolve_output_dir(s), std::filesystem::path("from_file"));
  setenv(kOutputDirEnv, "/tmp/override", 1);
  EXPECT_EQ(resolve_output_dir(s), std::filesystem::path("/tmp/override"));
  setenv(kOutputDirEnv, "", 1);
  EXPECT_EQ(resolve_output_dir(s), std::filesystem::path("from_file"));
  unsetenv(kOutputDirEnv);
}

}  // namespace
}  // namespace surgeseek
