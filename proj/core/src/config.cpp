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

#include <functional>
#include <istream>
#include <map>
#include <string>

#include "curvsir/error.hpp"
#include "curvsir/io_util.hpp"

namespace curvsir {

void ExperimentConfig::validate() const {
  params.validate();
  if (!(y0 >= 0.0 && y0 <= 1.0)) throw InvalidArgument("y0 must lie in [0, 1]");
  const double s = initial_s();
  if (!(s >= 0.0 && s <= 1.0 && s + y0 <= 1.0 + 1e-12)) {
    throw InvalidArgument("initial state must satisfy 0 <= s0, s0 + y0 <= 1");
  }
  if (!(dt > 0.0)) throw InvalidArgument("dt must be > 0");
  if (!(t_end >= 0.0)) throw InvalidArgument("t_end must be >= 0");
  if (sample_every == 0) throw InvalidArgument("sample_every must be >= 1");
  if (workers == 0) throw InvalidArgument("workers must be >= 1");
  switch (graph) {
    case GraphKind::kSbm:
      if (sbm.sizes.empty()) throw InvalidArgument("sbm_sizes is empty");
      break;
    case GraphKind::kFile:
      if (graph_file.empty()) throw InvalidArgument("graph = file needs graph_file");
      break;
    case GraphKind::kComplete:
    case GraphKind::kPath:
      if (graph_n < 2) throw InvalidArgument("graph_n must be >= 2");
      break;
  }
  if (curvature == CurvatureKind::kSynthetic && graph != GraphKind::kSbm) {
    throw InvalidArgument(
        "synthetic curvature needs a community partition (graph = sbm)");
  }
  if (curvature == CurvatureKind::kFile && curvature_file.empty()) {
    throw InvalidArgument("curvature = file needs curvature_file");
  }
}

ExperimentConfig three_community_preset() {
  ExperimentConfig c;
  c.preset = "three_community";
  c.graph = GraphKind::kSbm;
  c.sbm = {{40, 20, 10}, 0.3, 0.2, 1, 32};
  c.curvature = CurvatureKind::kSynthetic;
  c.curvature_intra = 0.3;
  c.curvature_inter = 3.0;
  c.mode = MatrixMode::kRaw;
  c.params = {0.05, 0.15, 0.02};
  c.y0 = 0.01;
  c.t_end = 200.0;
  c.dt = 0.01;
  c.sample_every = 10;
  c.simulate_operator = OperatorChoice::kBoth;
  c.seed = 1;
  c.t_query = 20.0;
  return c;
}

namespace {

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw InvalidArgument("bad value '" + std::string(value) + "' for key '" +
                        std::string(key) + "'");
}

double to_double(std::string_view key, std::string_view value) {
  const auto v = parse_double(value);
  if (!v) bad_value(key, value);
  return *v;
}

std::uint64_t to_uint(std::string_view key, std::string_view value) {
  const auto v = parse_uint(value);
  if (!v) bad_value(key, value);
  return *v;
}

bool to_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_value(key, value);
}

std::vector<double> to_list(std::string_view key, std::string_view value) {
  std::vector<double> out;
  for (auto item : split(value, ',')) out.push_back(to_double(key, item));
  return out;
}

using Setter = std::function<void(ExperimentConfig&, std::string_view,
                                  std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"graph",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         if (v == "sbm") c.graph = GraphKind::kSbm;
         else if (v == "file") c.graph = GraphKind::kFile;
         else if (v == "complete") c.graph = GraphKind::kComplete;
         else if (v == "path") c.graph = GraphKind::kPath;
         else bad_value(k, v);
       }},
      {"graph_file",
       [](ExperimentConfig& c, std::string_view, std::string_view v) {
         c.graph_file = std::string(v);
       }},
      {"graph_n",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.graph_n = to_uint(k, v);
       }},
      {"sbm_sizes",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.sbm.sizes.clear();
         for (auto item : split(v, ',')) {
           const auto size = to_uint(k, item);
           if (size == 0) bad_value(k, v);
           c.sbm.sizes.push_back(size);
         }
       }},
      {"p_in",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.sbm.p_in = to_double(k, v);
       }},
      {"p_out",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.sbm.p_out = to_double(k, v);
       }},
      {"max_retries",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.sbm.max_retries = static_cast<int>(to_uint(k, v));
       }},
      {"seed",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.seed = to_uint(k, v);
         c.sbm.seed = c.seed;
       }},
      {"curvature",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         if (v == "forman") c.curvature = CurvatureKind::kForman;
         else if (v == "synthetic") c.curvature = CurvatureKind::kSynthetic;
         else if (v == "file") c.curvature = CurvatureKind::kFile;
         else if (v == "constant") c.curvature = CurvatureKind::kConstant;
         else bad_value(k, v);
       }},
      {"curvature_intra",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.curvature_intra = to_double(k, v);
       }},
      {"curvature_inter",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.curvature_inter = to_double(k, v);
       }},
      {"curvature_value",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.curvature_value = to_double(k, v);
       }},
      {"curvature_file",
       [](ExperimentConfig& c, std::string_view, std::string_view v) {
         c.curvature_file = std::string(v);
       }},
      {"clamp_weights",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.clamp_weights = to_bool(k, v);
       }},
      {"mode",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         const auto mode = parse_matrix_mode(v);
         if (!mode) bad_value(k, v);
         c.mode = *mode;
       }},
      {"beta",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.params.beta = to_double(k, v);
       }},
      {"gamma",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.params.gamma = to_double(k, v);
       }},
      {"u",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.params.u = to_double(k, v);
       }},
      {"y0",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.y0 = to_double(k, v);
       }},
      {"s0",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.s0 = to_double(k, v);
       }},
      {"initial",
       [](ExperimentConfig&, std::string_view k, std::string_view v) {
         if (v != "homogeneous") bad_value(k, v);
       }},
      {"t_end",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.t_end = to_double(k, v);
       }},
      {"dt",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.dt = to_double(k, v);
       }},
      {"sample_every",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.sample_every = to_uint(k, v);
       }},
      {"operator",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         if (v == "adjacency") c.simulate_operator = OperatorChoice::kAdjacency;
         else if (v == "contact") c.simulate_operator = OperatorChoice::kContact;
         else if (v == "both") c.simulate_operator = OperatorChoice::kBoth;
         else bad_value(k, v);
       }},
      {"with_recovered",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.with_recovered = to_bool(k, v);
       }},
      {"output_dir",
       [](ExperimentConfig& c, std::string_view, std::string_view v) {
         c.output_dir = std::string(v);
       }},
      {"t_query",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.t_query = to_double(k, v);
       }},
      {"sweep_param",
       [](ExperimentConfig& c, std::string_view, std::string_view v) {
         c.sweep_param = std::string(v);
       }},
      {"sweep_values",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.sweep_values = to_list(k, v);
       }},
      {"workers",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.workers = to_uint(k, v);
       }},
      {"spectral_tol",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.spectral.tol = to_double(k, v);
         c.equilibrium.spectral.tol = c.spectral.tol;
       }},
      {"spectral_max_iter",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.spectral.max_iter = to_uint(k, v);
         c.equilibrium.spectral.max_iter = c.spectral.max_iter;
       }},
      {"eq_tol",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.equilibrium.tol = to_double(k, v);
       }},
      {"eq_max_iter",
       [](ExperimentConfig& c, std::string_view k, std::string_view v) {
         c.equilibrium.max_iter = to_uint(k, v);
       }},
  };
  return table;
}

}  // namespace

void apply_setting(ExperimentConfig& config, std::string_view key,
                   std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "preset") {
    if (value != "three_community") bad_value(key, value);
    config = three_community_preset();
    return;
  }
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) {
    throw InvalidArgument("unknown config key '" + std::string(key) + "'");
  }
  it->second(config, key, value);
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config;
  merge_config(in, config);
  return config;
}

void merge_config(std::istream& in, ExperimentConfig& config) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(std::string_view(line).substr(0, line.find('#')));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected 'key = value'", line_no);
    }
    try {
      apply_setting(config, text.substr(0, eq), text.substr(eq + 1));
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), line_no);
    }
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_config(in);
}

}  // namespace curvsir
