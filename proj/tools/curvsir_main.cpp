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

// curvsir: spectral thresholds, SIR simulation and endemic equilibria on
// curvature-weighted contact networks.
//
// Exit codes: 0 success, 2 configuration or input error, 3 numerical failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvsir/config.hpp"
#include "curvsir/error.hpp"
#include "curvsir/experiment.hpp"
#include "curvsir/io_util.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

struct CommonOptions {
  std::string config_file;
  std::string preset;
  std::vector<std::string> settings;
  std::string output_dir;
  std::string out_file;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("-c,--config", opts.config_file, "key = value config file");
  cmd->add_option("-p,--preset", opts.preset, "named preset (three_community)");
  cmd->add_option("-s,--set", opts.settings,
                  "override a config key, e.g. --set beta=0.2 (repeatable)");
  cmd->add_option("-o,--output-dir", opts.output_dir, "directory for outputs");
  cmd->add_option("--out", opts.out_file,
                  "write the JSON report here instead of stdout");
}

curvsir::ExperimentConfig resolve(const CommonOptions& opts) {
  curvsir::ExperimentConfig config;
  if (!opts.preset.empty()) curvsir::apply_setting(config, "preset", opts.preset);
  if (!opts.config_file.empty()) {
    // A config file starts from the preset when both are given.
    auto in = curvsir::open_input(opts.config_file);
    curvsir::merge_config(in, config);
  }
  for (const auto& kv : opts.settings) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw curvsir::InvalidArgument("--set expects key=value, got '" + kv + "'");
    }
    curvsir::apply_setting(config, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!opts.output_dir.empty()) config.output_dir = opts.output_dir;
  config.validate();
  return config;
}

void emit(const CommonOptions& opts, const std::string& json) {
  if (opts.out_file.empty()) {
    std::cout << json;
    return;
  }
  auto out = curvsir::open_output(opts.out_file);
  out << json;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature-weighted network SIR engine"};
  app.require_subcommand(1);

  CommonOptions spectrum_opts, simulate_opts, equilibrium_opts, sweep_opts,
      spatial_opts;
  auto* spectrum = app.add_subcommand(
      "spectrum", "spectral radius, R0 and curvature threshold (JSON)");
  add_common(spectrum, spectrum_opts);
  auto* simulate = app.add_subcommand(
      "simulate", "integrate the SIR system; write trajectory/monitor CSVs");
  add_common(simulate, simulate_opts);
  auto* equilibrium = app.add_subcommand(
      "equilibrium", "endemic equilibrium by monotone bracketing (JSON)");
  add_common(equilibrium, equilibrium_opts);
  auto* sweep = app.add_subcommand(
      "sweep", "run one simulation per sweep value in parallel");
  add_common(sweep, sweep_opts);
  auto* spatial = app.add_subcommand(
      "export-spatial", "node layout plus infection values at t_query (JSON)");
  add_common(spatial, spatial_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (spectrum->parsed()) {
      emit(spectrum_opts, curvsir::cmd_spectrum(resolve(spectrum_opts)));
    } else if (simulate->parsed()) {
      const auto config = resolve(simulate_opts);
      const auto result = curvsir::cmd_simulate(config);
      print_warnings(result.warnings);
      for (const auto& run : result.runs) {
        std::cout << run.label << ": R0 = " << curvsir::format_double(run.r0)
                  << ", omega worst = "
                  << curvsir::format_double(run.omega.worst()) << '\n';
      }
      for (const auto& f : result.files) std::cout << "wrote " << f.string() << '\n';
    } else if (equilibrium->parsed()) {
      emit(equilibrium_opts,
           curvsir::cmd_equilibrium(resolve(equilibrium_opts)));
    } else if (sweep->parsed()) {
      const auto config = resolve(sweep_opts);
      const auto rows = curvsir::cmd_sweep(config);
      std::cout << "wrote " << rows.size() << " runs and "
                << (config.output_dir / "sweep.csv").string() << '\n';
    } else if (spatial->parsed()) {
      std::vector<std::string> warnings;
      const auto json =
          curvsir::cmd_export_spatial(resolve(spatial_opts), &warnings);
      print_warnings(warnings);
      emit(spatial_opts, json);
    }
  } catch (const curvsir::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const curvsir::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return 0;
}
