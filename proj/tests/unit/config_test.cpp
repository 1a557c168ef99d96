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

#include "curvsir/config.hpp"

#include <sstream>

#include <gtest/gtest.h>

#include "curvsir/error.hpp"

namespace curvsir {
namespace {

TEST(ConfigTest, Defaults) {
  const ExperimentConfig c;
  EXPECT_EQ(c.graph, GraphKind::kSbm);
  EXPECT_EQ(c.sbm.sizes, (std::vector<std::size_t>{40, 20, 10}));
  EXPECT_EQ(c.mode, MatrixMode::kRaw);
  EXPECT_DOUBLE_EQ(c.initial_s(), 0.99);
  EXPECT_NO_THROW(c.validate());
}

TEST(ConfigTest, ParsesKeysAndComments) {
  std::istringstream in(
      "# comment\n"
      "graph = complete\n"
      "graph_n = 6\n"
      "\n"
      "curvature = constant   # trailing\n"
      "curvature_value = 0.5\n"
      "mode = row_stochastic\n"
      "beta = 0.3\n"
      "gamma=0.2\n"
      "u = 0.05\n"
      "sweep_values = 0.1, 0.2,0.3\n"
      "operator = contact\n");
  const auto c = parse_config(in);
  EXPECT_EQ(c.graph, GraphKind::kComplete);
  EXPECT_EQ(c.graph_n, 6u);
  EXPECT_EQ(c.curvature, CurvatureKind::kConstant);
  EXPECT_EQ(c.curvature_value, 0.5);
  EXPECT_EQ(c.mode, MatrixMode::kRowStochastic);
  EXPECT_EQ(c.params.beta, 0.3);
  EXPECT_EQ(c.params.gamma, 0.2);
  EXPECT_EQ(c.params.u, 0.05);
  EXPECT_EQ(c.sweep_values, (std::vector<double>{0.1, 0.2, 0.3}));
  EXPECT_EQ(c.simulate_operator, OperatorChoice::kContact);
}

TEST(ConfigTest, ErrorsCarryLineNumbers) {
  std::istringstream unknown("beta = 0.1\nbogus = 3\n");
  try {
    parse_config(unknown);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream no_eq("beta 0.1\n");
  EXPECT_THROW(parse_config(no_eq), ParseError);
  std::istringstream bad("dt = fast\n");
  EXPECT_THROW(parse_config(bad), ParseError);
}

TEST(ConfigTest, RejectsBadValues) {
  ExperimentConfig c;
  EXPECT_THROW(apply_setting(c, "mode", "column"), InvalidArgument);
  EXPECT_THROW(apply_setting(c, "preset", "nope"), InvalidArgument);
  EXPECT_THROW(apply_setting(c, "sample_every", "-1"), InvalidArgument);
}

TEST(ConfigTest, ValidateCrossFields) {
  ExperimentConfig c;
  c.graph = GraphKind::kComplete;
  c.graph_n = 5;
  c.curvature = CurvatureKind::kSynthetic;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c.curvature = CurvatureKind::kFile;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(ConfigTest, PresetThenOverride) {
  std::istringstream in("preset = three_community\nbeta = 0.07\n");
  const auto c = parse_config(in);
  EXPECT_EQ(c.preset, "three_community");
  EXPECT_EQ(c.curvature, CurvatureKind::kSynthetic);
  EXPECT_EQ(c.sbm.p_out, 0.2);
  EXPECT_EQ(c.params.beta, 0.07);
  EXPECT_EQ(c.params.gamma, 0.15);
}

TEST(ConfigTest, MergeKeepsExistingValues) {
  ExperimentConfig c = three_community_preset();
  std::istringstream in("t_end = 50\n");
  merge_config(in, c);
  EXPECT_EQ(c.t_end, 50.0);
  EXPECT_EQ(c.curvature_inter, 3.0);
}

TEST(ConfigTest, SeedAppliesToGraphSampler) {
  ExperimentConfig c;
  apply_setting(c, "seed", "17");
  EXPECT_EQ(c.seed, 17u);
  EXPECT_EQ(c.sbm.seed, 17u);
}

}  // namespace
}  // namespace curvsir
