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

#ifndef CURVSIR_CONFIG_HPP_
#define CURVSIR_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "curvsir/contact_matrix.hpp"
#include "curvsir/dynamics.hpp"
#include "curvsir/equilibrium.hpp"
#include "curvsir/graph.hpp"
#include "curvsir/spectral.hpp"

namespace curvsir {

enum class GraphKind { kSbm, kFile, kComplete, kPath };
enum class CurvatureKind { kForman, kSynthetic, kFile, kConstant };
// Which operator(s) `simulate` runs: the plain adjacency A, the curvature
// weighted M, or both for the A-vs-M comparison.
enum class OperatorChoice { kAdjacency, kContact, kBoth };

struct ExperimentConfig {
  std::string preset;

  GraphKind graph = GraphKind::kSbm;
  std::filesystem::path graph_file;
  std::size_t graph_n = 0;  // complete / path
  SbmOptions sbm{{40, 20, 10}, 0.3, 0.02, 1, 32};

  CurvatureKind curvature = CurvatureKind::kForman;
  double curvature_intra = -0.3;
  double curvature_inter = 1.2;
  double curvature_value = 0.0;
  std::filesystem::path curvature_file;
  bool clamp_weights = false;

  MatrixMode mode = MatrixMode::kRaw;
  EpidemicParams params{0.4, 0.15, 0.02};

  // Homogeneous start; s0 < 0 means 1 - y0.
  double y0 = 0.01;
  double s0 = -1.0;

  double t_end = 100.0;
  double dt = 0.01;
  std::size_t sample_every = 100;
  OperatorChoice simulate_operator = OperatorChoice::kBoth;
  bool with_recovered = false;

  std::filesystem::path output_dir = ".";
  std::uint64_t seed = 1;
  double t_query = 0.0;

  std::string sweep_param = "beta";
  std::vector<double> sweep_values;
  std::size_t workers = 1;

  SpectralOptions spectral;
  EquilibriumOptions equilibrium;

  double initial_s() const { return s0 < 0.0 ? 1.0 - y0 : s0; }
  // Cross-field consistency. Throws InvalidArgument.
  void validate() const;
};

// Three communities of 40, 20 and 10 nodes with barrier curvature on the
// inter-community edges. Engine defaults, tuned for a visible A-vs-M
// contrast; not measured values.
ExperimentConfig three_community_preset();

// Sets one key. "preset" replaces the whole config with the named preset,
// so later keys override it. Throws InvalidArgument for unknown keys or
// malformed values.
void apply_setting(ExperimentConfig& config, std::string_view key,
                   std::string_view value);

// "key = value" lines, '#' comments. Errors carry the line number.
ExperimentConfig parse_config(std::istream& in);
// Applies the file's settings on top of an existing config.
void merge_config(std::istream& in, ExperimentConfig& config);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace curvsir

#endif  // CURVSIR_CONFIG_HPP_
