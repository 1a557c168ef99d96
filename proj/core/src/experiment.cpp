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

#include "curvsir/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <ostream>
#include <thread>

#include "curvsir/equilibrium.hpp"
#include "curvsir/error.hpp"
#include "curvsir/io_util.hpp"
#include "curvsir/random.hpp"
#include "curvsir/spectral.hpp"
#include "json_reports.hpp"

namespace curvsir {

Scenario build_scenario(const ExperimentConfig& config) {
  config.validate();
  Scenario sc;
  switch (config.graph) {
    case GraphKind::kSbm: {
      SbmSample sample = sbm_generate(config.sbm);
      sc.graph = std::move(sample.graph);
      sc.partition = std::move(sample.partition);
      sc.graph_seed = sample.seed_used;
      if (sample.seed_used != config.sbm.seed) {
        sc.warnings.push_back("sbm draw with seed " +
                              std::to_string(config.sbm.seed) +
                              " was disconnected; used seed " +
                              std::to_string(sample.seed_used));
      }
      break;
    }
    case GraphKind::kFile:
      sc.graph = read_edge_list(config.graph_file);
      break;
    case GraphKind::kComplete:
      sc.graph = complete_graph(config.graph_n);
      break;
    case GraphKind::kPath:
      sc.graph = path_graph(config.graph_n);
      break;
  }
  if (!is_connected(sc.graph)) {
    throw InvalidArgument("graph is disconnected");
  }

  switch (config.curvature) {
    case CurvatureKind::kForman:
      sc.curvature = forman_curvature(sc.graph);
      break;
    case CurvatureKind::kSynthetic:
      sc.curvature = synthetic_field(sc.graph, *sc.partition,
                                     config.curvature_intra,
                                     config.curvature_inter);
      break;
    case CurvatureKind::kFile:
      sc.curvature = load_curvature(config.curvature_file, sc.graph);
      break;
    case CurvatureKind::kConstant:
      sc.curvature = constant_field(sc.graph, config.curvature_value);
      break;
  }
  sc.weights = exp_weight(sc.curvature);
  if (config.clamp_weights) sc.weights = clamp_unit(sc.weights);

  sc.adjacency = ContactMatrix::build(sc.graph, WeightField::unit(sc.graph),
                                      config.mode);
  sc.contact = ContactMatrix::build(sc.graph, sc.weights, config.mode);

  if (config.params.u > config.params.gamma) {
    sc.warnings.push_back(
        "u > gamma: s + y <= 1 is not invariant under the flow; the mass "
        "monitor is informational only");
  }
  return sc;
}

namespace {

nlohmann::ordered_json operator_json(const SpectralReport& r, double beta,
                                     double gamma) {
  auto j = detail::spectral_json(r);
  j["r0"] = beta / gamma * r.lambda_max;
  return j;
}

}  // namespace

std::string cmd_spectrum(const ExperimentConfig& config) {
  const Scenario sc = build_scenario(config);
  const auto& p = config.params;
  const SpectralReport a = spectral_radius(sc.adjacency, config.spectral);
  const SpectralReport m = spectral_radius(sc.contact, config.spectral);

  nlohmann::ordered_json j;
  j["schema_version"] = detail::kSchemaVersion;
  j["mode"] = std::string(to_string(config.mode));
  if (config.mode == MatrixMode::kRowStochastic) {
    j["mode_note"] =
        "row_stochastic: lambda_max = 1 for every operator, so R0 = beta / "
        "gamma independently of curvature";
  }
  j["graph"] = {{"n", sc.graph.node_count()},
                {"edges", sc.graph.edge_count()},
                {"seed_used", sc.graph_seed}};
  j["params"] = {{"beta", p.beta}, {"gamma", p.gamma}, {"u", p.u}};
  j["curvature"] = {{"source", std::string(to_string(sc.curvature.source()))},
                    {"clamped", config.clamp_weights}};
  j["adjacency"] = operator_json(a, p.beta, p.gamma);
  j["contact"] = operator_json(m, p.beta, p.gamma);
  j["threshold"] = detail::threshold_json(
      geometric_threshold(sc.graph, sc.curvature, p.beta, p.gamma,
                          config.spectral));
  const auto w = sc.weights.values();
  if (std::all_of(w.begin(), w.end(), [](double x) { return x <= 1.0; })) {
    const auto red = spectral_reduction_check(sc.graph, sc.weights, config.spectral);
    j["spectral_reduction"] = {{"lambda_weighted", red.lambda_weighted},
                               {"lambda_unweighted", red.lambda_unweighted},
                               {"holds", red.holds}};
  }
  if (!sc.warnings.empty()) j["warnings"] = sc.warnings;
  return j.dump(2) + "\n";
}

namespace {

OperatorRun run_operator(const ExperimentConfig& config,
                         const ContactMatrix& m, std::string label,
                         std::vector<std::string>& warnings) {
  OperatorRun run;
  run.label = std::move(label);
  const SpectralReport spec = spectral_radius(m, config.spectral);
  run.r0 = config.params.beta / config.params.gamma * spec.lambda_max;

  IntegrateOptions io;
  io.t_end = config.t_end;
  io.dt = config.dt;
  io.sample_every = config.sample_every;
  run.trajectory = integrate(
      m, config.params,
      SirState::homogeneous(m.size(), config.initial_s(), config.y0), io);

  std::vector<double> s_eq, y_eq;
  if (run.r0 > 1.0) {
    try {
      const auto eq = solve_endemic(m, config.params, config.equilibrium);
      s_eq = eq.s_dagger;
      y_eq = eq.y_dagger;
    } catch (const NumericalError& e) {
      warnings.push_back(run.label + ": no Volterra monitor (" + e.what() + ")");
    }
  }
  run.monitors = compute_monitors(run.trajectory, spec.left_perron, s_eq, y_eq);
  run.omega = omega_monitor(run.trajectory);
  for (const ClipEvent& c : run.trajectory.clips) {
    warnings.push_back(run.label + ": clipped " + c.compartment + "[" +
                       std::to_string(c.node) + "] = " +
                       format_double(c.value) + " at t = " + format_double(c.t));
  }
  return run;
}

void write_run(const ExperimentConfig& config, const Scenario& sc,
               const OperatorRun& run, SimulateResult& result) {
  std::filesystem::create_directories(config.output_dir);
  const auto traj_path = config.output_dir / ("trajectory_" + run.label + ".csv");
  {
    auto out = open_output(traj_path);
    write_trajectory_csv(run.trajectory, out, config.with_recovered);
  }
  result.files.push_back(traj_path);
  const auto mon_path = config.output_dir / ("monitors_" + run.label + ".csv");
  {
    auto out = open_output(mon_path);
    write_monitor_csv(run.monitors, out);
  }
  result.files.push_back(mon_path);
  if (sc.partition) {
    const auto com_path =
        config.output_dir / ("communities_" + run.label + ".csv");
    auto out = open_output(com_path);
    write_community_csv(community_average(run.trajectory, *sc.partition), out);
    result.files.push_back(com_path);
  }
}

}  // namespace

SimulateResult cmd_simulate(const ExperimentConfig& config, bool write_files) {
  const Scenario sc = build_scenario(config);
  SimulateResult result;
  result.warnings = sc.warnings;
  if (config.simulate_operator != OperatorChoice::kContact) {
    result.runs.push_back(run_operator(config, sc.adjacency, "A", result.warnings));
  }
  if (config.simulate_operator != OperatorChoice::kAdjacency) {
    result.runs.push_back(run_operator(config, sc.contact, "M", result.warnings));
  }
  if (write_files) {
    for (const auto& run : result.runs) write_run(config, sc, run, result);
  }
  return result;
}

std::string cmd_equilibrium(const ExperimentConfig& config) {
  const Scenario sc = build_scenario(config);
  const EquilibriumReport report =
      solve_endemic(sc.contact, config.params, config.equilibrium);
  return to_json(report) + "\n";
}

std::vector<SweepRow> cmd_sweep(const ExperimentConfig& config) {
  if (config.sweep_values.empty()) {
    throw InvalidArgument("sweep needs sweep_values");
  }
  static const std::vector<std::string> kSweepable = {
      "beta", "gamma", "u", "y0", "curvature_intra", "curvature_inter",
      "curvature_value"};
  if (std::find(kSweepable.begin(), kSweepable.end(), config.sweep_param) ==
      kSweepable.end()) {
    throw InvalidArgument("cannot sweep '" + config.sweep_param + "'");
  }
  std::vector<ExperimentConfig> configs;
  for (double value : config.sweep_values) {
    ExperimentConfig c = config;
    apply_setting(c, c.sweep_param, format_double(value));
    c.simulate_operator = OperatorChoice::kContact;
    c.validate();
    configs.push_back(std::move(c));
  }
  std::filesystem::create_directories(config.output_dir);

  std::vector<SweepRow> rows(configs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= configs.size()) return;
      try {
        const Scenario sc = build_scenario(configs[k]);
        std::vector<std::string> ignored;
        const OperatorRun run =
            run_operator(configs[k], sc.contact, "M", ignored);
        SweepRow row{k, config.sweep_values[k], run.r0, 0.0, 0.0};
        for (const auto& st : run.trajectory.states) {
          for (double y : st.y) row.peak_y = std::max(row.peak_y, y);
        }
        const auto& last = run.trajectory.states.back().y;
        for (double y : last) row.final_mean_y += y;
        row.final_mean_y /= static_cast<double>(last.size());
        rows[k] = row;
        auto out = open_output(config.output_dir /
                               ("sweep_" + std::to_string(k) + "_trajectory.csv"));
        write_trajectory_csv(run.trajectory, out, config.with_recovered);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t count = std::min(config.workers, configs.size());
    for (std::size_t w = 0; w < count; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  auto out = open_output(config.output_dir / "sweep.csv");
  out << "index,param,value,r0,peak_y,final_mean_y\n";
  for (const SweepRow& r : rows) {
    out << r.index << ',' << config.sweep_param << ',' << format_double(r.value)
        << ',' << format_double(r.r0) << ',' << format_double(r.peak_y) << ','
        << format_double(r.final_mean_y) << '\n';
  }
  return rows;
}

std::string cmd_export_spatial(const ExperimentConfig& config,
                               std::vector<std::string>* warnings) {
  ExperimentConfig c = config;
  c.simulate_operator = OperatorChoice::kContact;
  const Scenario sc = build_scenario(c);
  std::vector<std::string> ignored;
  const OperatorRun run = run_operator(c, sc.contact, "M", ignored);
  const CommunityPartition partition =
      sc.partition ? *sc.partition
                   : CommunityPartition::from_labels(std::vector<std::uint32_t>(
                         sc.graph.node_count(), 0));
  std::string json = spatial_export(sc.graph, partition, run.trajectory,
                                    c.t_query, c.seed, warnings);
  std::filesystem::create_directories(c.output_dir);
  auto out = open_output(c.output_dir / "spatial.json");
  out << json;
  return json;
}

CommunitySeries community_average(const Trajectory& traj,
                                  const CommunityPartition& partition) {
  if (traj.node_count() != partition.node_count()) {
    throw InvalidArgument("partition does not cover the trajectory's nodes");
  }
  CommunitySeries out;
  out.times = traj.times();
  const std::size_t k = partition.community_count();
  out.mean_y.assign(k, std::vector<double>(traj.states.size(), 0.0));
  for (std::size_t t = 0; t < traj.states.size(); ++t) {
    const auto& y = traj.states[t].y;
    for (std::size_t i = 0; i < y.size(); ++i) {
      out.mean_y[partition.label(static_cast<NodeId>(i))][t] += y[i];
    }
    for (std::size_t c = 0; c < k; ++c) {
      out.mean_y[c][t] /= static_cast<double>(partition.sizes()[c]);
    }
  }
  return out;
}

void write_community_csv(const CommunitySeries& series, std::ostream& out) {
  out << "t,community,mean_y\n";
  for (std::size_t t = 0; t < series.times.size(); ++t) {
    const std::string time = format_double(series.times[t]);
    for (std::size_t c = 0; c < series.mean_y.size(); ++c) {
      out << time << ',' << c << ',' << format_double(series.mean_y[c][t]) << '\n';
    }
  }
}

std::string spatial_export(const Graph& g, const CommunityPartition& partition,
                           const Trajectory& traj, double t_query,
                           std::uint64_t seed,
                           std::vector<std::string>* warnings) {
  if (traj.states.empty()) throw InvalidArgument("empty trajectory");
  if (partition.node_count() != g.node_count() ||
      traj.node_count() != g.node_count()) {
    throw InvalidArgument("graph, partition and trajectory sizes differ");
  }
  const double t_first = traj.states.front().t;
  const double t_last = traj.states.back().t;
  const bool clamped = t_query < t_first || t_query > t_last;
  if (clamped && warnings) {
    warnings->push_back("t_query " + format_double(t_query) +
                        " outside [" + format_double(t_first) + ", " +
                        format_double(t_last) + "]; clamped");
  }
  const double t = std::clamp(t_query, t_first, t_last);
  std::size_t nearest = 0;
  for (std::size_t k = 1; k < traj.states.size(); ++k) {
    if (std::abs(traj.states[k].t - t) < std::abs(traj.states[nearest].t - t)) {
      nearest = k;
    }
  }
  const SirState& st = traj.states[nearest];

  const std::size_t k = partition.community_count();
  const double chord = k > 1 ? 2.0 * std::sin(std::numbers::pi / k) : 2.0;
  const double disc = std::min(0.8, 0.4 * chord);
  Rng rng(seed);
  nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const std::uint32_t c = partition.label(i);
    const double angle =
        k > 1 ? std::numbers::pi / 2 + 2.0 * std::numbers::pi * c / k : 0.0;
    const double cx = k > 1 ? std::cos(angle) : 0.0;
    const double cy = k > 1 ? std::sin(angle) : 0.0;
    const double r = disc * std::sqrt(rng.uniform());
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    nodes.push_back({{"node", i},
                     {"x", cx + r * std::cos(theta)},
                     {"y_pos", cy + r * std::sin(theta)},
                     {"community", c},
                     {"infection", st.y[i]}});
  }
  nlohmann::ordered_json j;
  j["schema_version"] = detail::kSchemaVersion;
  j["t_query"] = t_query;
  j["t_used"] = st.t;
  j["clamped"] = clamped;
  j["nodes"] = std::move(nodes);
  return j.dump(2) + "\n";
}

}  // namespace curvsir
