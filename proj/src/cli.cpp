// Copyright 2026 The qswitchsim Authors
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

#include "qss/cli.hpp"

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qss/sweep.hpp"

namespace qss {

int cli_main(int argc, const char* const* argv) {
  CLI::App app{std::string(kToolName) +
               ": heralded entanglement distribution and teleportation "
               "fidelity sweeps over flip-channel error probabilities"};
  app.set_config("--config", "", "key=value configuration file; flags override it");

  SweepConfig config;
  std::string mode = "both";
  std::string format = "csv";
  std::string quadrature;

  app.add_option("--p-steps", config.p_steps, "grid points along p (>= 2)")
      ->capture_default_str();
  app.add_option("--q-steps", config.q_steps, "grid points along q (>= 2)")
      ->capture_default_str();
  app.add_option("--p-min", config.p_min, "lower end of the p range")
      ->capture_default_str();
  app.add_option("--p-max", config.p_max, "upper end of the p range")
      ->capture_default_str();
  app.add_option("--q-min", config.q_min, "lower end of the q range")
      ->capture_default_str();
  app.add_option("--q-max", config.q_max, "upper end of the q range")
      ->capture_default_str();
  app.add_option("--mode", mode, "fidelity families to compute: switch|classical|both")
      ->capture_default_str();
  auto* quad_opt = app.add_option(
      "--quadrature", quadrature,
      "numeric averaging rule, det:NxM or mc:SAMPLES; enables the *_num columns");
  app.add_option("--seed", config.seed, "base RNG seed for Monte Carlo and heralding")
      ->capture_default_str();
  app.add_option("--herald-trials", config.herald_trials,
                 "sampled heralding outcomes per grid point (0 disables)")
      ->capture_default_str();
  app.add_option("--output", config.output_path, "output path, '-' for stdout")
      ->capture_default_str();
  app.add_option("--format", format, "output format: csv|json")->capture_default_str();
  app.add_option("--workers", config.workers, "worker threads for grid evaluation")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (mode == "switch") {
      config.mode = SweepMode::Switch;
    } else if (mode == "classical") {
      config.mode = SweepMode::Classical;
    } else if (mode == "both") {
      config.mode = SweepMode::Both;
    } else {
      throw ConfigError("--mode must be switch, classical or both");
    }
    if (format == "csv") {
      config.format = OutputFormat::Csv;
    } else if (format == "json") {
      config.format = OutputFormat::Json;
    } else {
      throw ConfigError("--format must be csv or json");
    }
    if (quad_opt->count() > 0) {
      config.quadrature = parse_quadrature(quadrature);
    }

    emit(run_sweep(config), config);
  } catch (const IoError& e) {
    std::cerr << kToolName << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << kToolName << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace qss
