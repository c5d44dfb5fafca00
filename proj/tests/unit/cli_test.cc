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

#include "cli.h"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "surgeseek/scenario.h"

namespace surgeseek {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "surgeseek");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("surgeseek_cli_" + std::string(::testing::UnitTest::GetInstance()
                                               ->current_test_info()
                                               ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    setenv(kOutputDirEnv, dir_.string().c_str(), 1);
    scenario_ = std::string(SURGESEEK_TEST_DATA_DIR) + "/short.yaml";
  }
  void TearDown() override {
    unsetenv(kOutputDirEnv);
    fs::remove_all(dir_);
  }
  fs::path dir_;
  std::string scenario_;
};

TEST_F(CliTest, SimulateWritesCsvAndMetadata) {
  const Result r = invoke({"simulate", scenario_});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("final_error="), std::string::npos);
  const std::string csv = slurp(dir_ / "full.csv");
  EXPECT_EQ(csv.rfind("t,x,y,theta,vx,vy,omega,u1,u2,rho\n", 0), 0u);
  const std::string meta = slurp(dir_ / "full.meta.json");
  EXPECT_NE(meta.find("\"c_hat\""), std::string::npos);
  EXPECT_NE(meta.find("\"thresholds\""), std::string::npos);
}

TEST_F(CliTest, SimulateIsByteIdenticalOnRerun) {
  ASSERT_EQ(invoke({"simulate", scenario_}).code, 0);
  const std::string first = slurp(dir_ / "full.csv");
  const std::string first_meta = slurp(dir_ / "full.meta.json");
  ASSERT_EQ(invoke({"simulate", scenario_}).code, 0);
  EXPECT_EQ(slurp(dir_ / "full.csv"), first);
  EXPECT_EQ(slurp(dir_ / "full.meta.json"), first_meta);
}

TEST_F(CliTest, AverageAndCompare) {
  ASSERT_EQ(invoke({"average", scenario_}).code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "averaged.csv"));
  const Result r = invoke({"compare", scenario_});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("sup_deviation="), std::string::npos);
  const std::string metrics = slurp(dir_ / "metrics.csv");
  EXPECT_EQ(metrics.rfind(
                "param_value,final_error,conv_time_r,path_length,sup_deviation,status\n", 0),
            0u);
}

TEST_F(CliTest, SweepWritesTableAndRuns) {
  const Result r = invoke({"sweep", scenario_, "--axis", "epsilon", "--values", "0.1,0.05"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "sweep_epsilon.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "sweep_epsilon_0.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "sweep_epsilon_1.csv"));
  EXPECT_NE(r.out.find("largest_converging_epsilon="), std::string::npos);
}

TEST_F(CliTest, SweepRejectsBadArguments) {
  EXPECT_EQ(invoke({"sweep", scenario_, "--axis", "m11", "--values", "1"}).code,
            cli::kUsage);
  const Result r = invoke({"sweep", scenario_, "--axis", "k", "--values", "1,x"});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_EQ(r.err.rfind("error: bad_arguments:", 0), 0u);
}

TEST_F(CliTest, ValidateDither) {
  EXPECT_EQ(invoke({"validate-dither", "--signal", "cos", "--period", "6.283185307179586"}).code,
            0);
  const Result sin = invoke({"validate-dither", "--signal", "sin", "--period", "6.283185307179586"});
  EXPECT_EQ(sin.code, cli::kCheckFailed);
  EXPECT_EQ(sin.err, "error: inadmissible_dither: signal 'sin' violates the zero-mean conditions\n");
  EXPECT_EQ(invoke({"validate-dither", "--signal", "const"}).code, cli::kCheckFailed);
  EXPECT_EQ(invoke({"validate-dither", "--signal", "square"}).code, cli::kUsage);
}

TEST_F(CliTest, Passivity) {
  const Result ok = invoke({"passivity", "--scenario", scenario_});
  ASSERT_EQ(ok.code, 0) << ok.err;
  EXPECT_NE(ok.out.find("c_hat=20.25"), std::string::npos);
  EXPECT_NE(ok.out.find("monotone=true"), std::string::npos);
  const Result hot = invoke({"passivity", "--scenario", scenario_, "--c", "25"});
  ASSERT_EQ(hot.code, 0) << hot.err;
  EXPECT_NE(hot.out.find("monotone=false"), std::string::npos);
  EXPECT_NE(hot.err.find("warning:"), std::string::npos);
}

TEST_F(CliTest, DemoDoubleIntegrator) {
  const fs::path csv = dir_ / "di.csv";
  const Result r = invoke({"demo-di", "--omega", "20", "--horizon", "5", "--output", csv.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(csv).rfind("t,xi1,xi2,z1,z2\n", 0), 0u);
}

TEST_F(CliTest, ErrorsAreOneLine) {
  const Result missing = invoke({"simulate", (dir_ / "nope.yaml").string()});
  EXPECT_EQ(missing.code, cli::kBadScenario);
  EXPECT_EQ(missing.err.rfind("error: invalid_scenario:", 0), 0u);
  EXPECT_EQ(std::count(missing.err.begin(), missing.err.end(), '\n'), 1);

  const fs::path bad = dir_ / "bad.yaml";
  std::ofstream(bad) << "gains: {epsilon: -1}\n";
  EXPECT_EQ(invoke({"simulate", bad.string()}).code, cli::kBadScenario);

  const Result none = invoke({});
  EXPECT_EQ(none.code, cli::kUsage);
  EXPECT_EQ(invoke({"fly"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST_F(CliTest, BlowUpReportsRunFailure) {
  const fs::path bad = dir_ / "wild.yaml";
  std::ofstream(bad) << "gains: {k: 1000000, epsilon: 0.1}\nrun: {horizon: 20}\n";
  const Result r = invoke({"simulate", bad.string()});
  EXPECT_EQ(r.code, cli::kRunFailed);
  EXPECT_EQ(r.err.rfind("error: integration_failed:", 0), 0u);
}

}  // namespace
}  // namespace surgeseek
