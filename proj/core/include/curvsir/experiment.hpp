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

#ifndef CURVSIR_EXPERIMENT_HPP_
#define CURVSIR_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "curvsir/config.hpp"
#include "curvsir/contact_matrix.hpp"
#include "curvsir/curvature.hpp"
#include "curvsir/dynamics.hpp"
#include "curvsir/graph.hpp"

namespace curvsir {

// Everything derived from a config before any dynamics run.
struct Scenario {
  Graph graph;
  std::optional<CommunityPartition> partition;
  std::uint64_t graph_seed = 0;
  CurvatureField curvature;
  WeightField weights;
  // A in the configured mode (unit weights) and M = A∘W in the same mode.
  ContactMatrix adjacency;
  ContactMatrix contact;
  std::vector<std::string> warnings;
};

Scenario build_scenario(const ExperimentConfig& config);

// JSON: spectra of A and M, R0 for each, curvature threshold analysis and,
// when every weight is <= 1, the spectral reduction check.
std::string cmd_spectrum(const ExperimentConfig& config);

struct OperatorRun {
  std::string label;  // "A" or "M"
  double r0 = 0.0;
  Trajectory trajectory;
  MonitorSeries monitors;
  OmegaReport omega;
};

struct SimulateResult {
  std::vector<OperatorRun> runs;
  std::vector<std::filesystem::path> files;
  std::vector<std::string> warnings;
};

// Runs the configured operator(s). With write_files, emits
// trajectory_<label>.csv, monitors_<label>.csv and, when a partition
// exists, communities_<label>.csv into output_dir.
SimulateResult cmd_simulate(const ExperimentConfig& config,
                            bool write_files = true);

// JSON EquilibriumReport for the contact operator M. Throws
// NoEndemicEquilibrium when R0 <= 1.
std::string cmd_equilibrium(const ExperimentConfig& config);

struct SweepRow {
  std::size_t index = 0;
  double value = 0.0;
  double r0 = 0.0;
  double peak_y = 0.0;
  double final_mean_y = 0.0;
};

// One contact-operator run per sweep value, fanned out over `workers`
// threads. Writes sweep_<index>_trajectory.csv per run and sweep.csv.
std::vector<SweepRow> cmd_sweep(const ExperimentConfig& config);

// Runs the contact operator and writes spatial.json for t_query.
std::string cmd_export_spatial(const ExperimentConfig& config,
                               std::vector<std::string>* warnings = nullptr);

// Unweighted mean of y over each community, per sample.
struct CommunitySeries {
  std::vector<double> times;
  // mean_y[c][k]: community c at sample k.
  std::vector<std::vector<double>> mean_y;
};

CommunitySeries community_average(const Trajectory& traj,
                                  const CommunityPartition& partition);
void write_community_csv(const CommunitySeries& series, std::ostream& out);

// Node positions plus infection values at the sample nearest t_query.
// Communities sit on the vertices of a regular polygon; nodes are jittered
// inside their community's disc by a seeded generator. t_query outside the
// trajectory is clamped with a warning.
std::string spatial_export(const Graph& g, const CommunityPartition& partition,
                           const Trajectory& traj, double t_query,
                           std::uint64_t seed,
                           std::vector<std::string>* warnings = nullptr);

}  // namespace curvsir

#endif  // CURVSIR_EXPERIMENT_HPP_
