// Copyright 2026 The curvsir Authors.
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

// Runs the curvsir binary end to end.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("curvsir_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args) {
  const std::string cmd =
      std::string(CURVSIR_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* kSmall =
    "--set graph=complete --set graph_n=5 --set curvature=constant "
    "--set curvature_value=0";

TEST(CliTest, SpectrumWritesJson) {
  const auto dir = scratch("spectrum");
  ASSERT_EQ(run(std::string("spectrum ") + kSmall +
                " --set beta=0.1 --set gamma=0.5 --out " + (dir / "s.json").string()),
            0);
  const auto j = nlohmann::json::parse(slurp(dir / "s.json"));
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_NEAR(j["contact"]["r0"].get<double>(), 0.8, 1e-12);
}

TEST(CliTest, ConfigErrorsExitWithTwo) {
  EXPECT_EQ(run("spectrum --set nonsense=1"), 2);
  EXPECT_EQ(run("spectrum --set beta"), 2);
  EXPECT_EQ(run("spectrum --config /nonexistent/curvsir.cfg"), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("spectrum --set beta=-1"), 2);
}

TEST(CliTest, SubcriticalEquilibriumExitsWithThree) {
  EXPECT_EQ(run(std::string("equilibrium ") + kSmall + " --set beta=0.1 --set gamma=0.5"), 3);
}

TEST(CliTest, ConfigFileAndOverrides) {
  const auto dir = scratch("config");
  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "graph = complete\ngraph_n = 4\ncurvature = constant\n"
           "beta = 0.5\ngamma = 0.2\nu = 0.1\n";
  }
  ASSERT_EQ(run("equilibrium -c " + (dir / "run.cfg").string() + " --set beta=0.4 --out " +
                (dir / "eq.json").string()),
            0);
  const auto j = nlohmann::json::parse(slurp(dir / "eq.json"));
  // Homogeneous: s = gamma / (3 beta), y = u (1 - s) / gamma.
  const double s = 0.2 / 1.2;
  EXPECT_NEAR(j["s_dagger"][0].get<double>(), s, 1e-9);
  EXPECT_NEAR(j["y_dagger"][0].get<double>(), 0.1 * (1 - s) / 0.2, 1e-9);
  EXPECT_TRUE(j["monotone_ok"].get<bool>());
}

TEST(CliTest, SimulateIsByteReproducible) {
  const std::string args =
      "simulate --preset three_community --set t_end=10 --set sample_every=50 -o ";
  const auto a = scratch("sim_a"), b = scratch("sim_b");
  ASSERT_EQ(run(args + a.string()), 0);
  ASSERT_EQ(run(args + b.string()), 0);
  for (const char* f : {"trajectory_A.csv", "trajectory_M.csv", "monitors_M.csv",
                        "communities_M.csv"}) {
    ASSERT_TRUE(fs::exists(a / f)) << f;
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
}

TEST(CliTest, SweepAndSpatialExport) {
  const auto dir = scratch("sweep");
  ASSERT_EQ(run("sweep --preset three_community --set t_end=5 --set sweep_param=beta "
                "--set sweep_values=0.05,0.1 --set workers=2 -o " + dir.string()),
            0);
  EXPECT_TRUE(fs::exists(dir / "sweep.csv"));
  EXPECT_TRUE(fs::exists(dir / "sweep_1_trajectory.csv"));

  ASSERT_EQ(run("export-spatial --preset three_community --set t_end=30 -o " + dir.string()),
            0);
  const auto j = nlohmann::json::parse(slurp(dir / "spatial.json"));
  EXPECT_EQ(j["nodes"].size(), 70u);
  EXPECT_EQ(j["t_query"], 20.0);
}

}  // namespace
