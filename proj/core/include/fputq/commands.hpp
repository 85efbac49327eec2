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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fputq/config.hpp"
#include "fputq/resources.hpp"
#include "fputq/validation.hpp"

namespace fputq {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 1,
  kExitValidationFailure = 2,
  kExitCapacityGuard = 3,
};

struct SimulateResult {
  std::string observables_path;  ///< observables.csv
  std::string checkpoint_path;   ///< state.chk
  int rows = 0;
};

/// Evolves the configured initial state for trotter.steps steps, writing one CSV row per
/// step (step, t, norm, e_kin, e_pot, e_total, q_0..q_{N-1}) and the final checkpoint.
SimulateResult cmd_simulate(const RunConfig& config);

struct CorrelatorResult {
  std::string csv_path;  ///< correlator.csv
  std::vector<SeriesPoint> points;
  std::uint64_t n_exec = 0;  ///< 4 * N_tau * M (0 without shots)
};

/// Columns: t, h, estimator, re, im, bias_bound, shots, seed, n_exec. Shot and seed
/// fields are empty for exact generating values.
CorrelatorResult cmd_correlator(const RunConfig& config);

/// Writes resources.json; with table1 also prints the serial/parallel qubit rows to `out`.
ResourceReport cmd_resources(const RunConfig& config, bool table1, std::ostream& out);

struct ValidateResult {
  std::string summary_path;  ///< validation.json
  std::vector<CheckResult> checks;
  bool passed() const;
};

ValidateResult cmd_validate(const RunConfig& config, std::ostream& out);

/// Runs a subcommand by name and maps failures to exit codes; messages go to `err`.
int run_command(const std::string& name, const RunConfig& config, bool table1, std::ostream& out, std::ostream& err);

/// Shortest round-trip decimal text of a double, '.' as decimal separator.
std::string format_double(double v);

}  // namespace fputq
