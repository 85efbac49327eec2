// Copyright 2026 The fputq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// fputq: simulate, correlator, resources and validate subcommands.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "fputq/commands.hpp"
#include "fputq/config.hpp"
#include "fputq/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Quantum simulation of the beta-FPUT chain on a first-quantized grid"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::optional<int> jobs;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output;
  bool table1 = false;

  for (const char* name : {"simulate", "correlator", "resources", "validate"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "Configuration file")->check(CLI::ExistingFile);
    sub->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "Seed (overrides correlator.seed)");
    sub->add_option("--output", output, "Output directory (overrides output.directory)");
    if (std::string(name) == "resources") sub->add_flag("--table1", table1, "Print the reference qubit table");
  }
  app.footer("Exit codes: 0 success, 1 config error, 2 validation failure, 3 capacity guard.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? fputq::kExitOk : fputq::kExitConfigError;
  }

  fputq::RunConfig config;
  try {
    if (!config_path.empty()) config = fputq::load_config(config_path);
  } catch (const fputq::ConfigError& e) {
    std::cerr << "config error: " << config_path << ": " << e.what() << '\n';
    return fputq::kExitConfigError;
  }
  if (jobs) config.jobs = *jobs;
  if (seed) config.seed = *seed;
  if (output) config.output_directory = *output;

  const std::string command = app.get_subcommands().front()->get_name();
  return fputq::run_command(command, config, table1, std::cout, std::cerr);
}
