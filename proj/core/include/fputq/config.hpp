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
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fputq/circuit_ir.hpp"
#include "fputq/correlator.hpp"
#include "fputq/encoding.hpp"
#include "fputq/model.hpp"
#include "fputq/propagator.hpp"

namespace fputq {

enum class EvolutionMode { kTrotter, kExact };

std::string_view to_string(EvolutionMode mode);

/// Everything a command needs. Every field has a default, so an empty file is a valid config.
struct RunConfig {
  ModelParams model{};

  int bits = 4;
  std::optional<double> q_max;  ///< unset: default_q_max(model, bits)
  EncodingKind encoding = EncodingKind::kUnsignedOffset;

  TrotterOrder order = TrotterOrder::kSecond;
  double dt = 0.01;
  int steps = 100;

  int mode_k = 1;
  double h = 0.05;
  std::vector<EstimatorKind> estimators = {EstimatorKind::kRichardson};
  std::vector<double> times = {0.0};
  std::optional<int> shots;
  std::uint64_t seed = 0;
  EvolutionMode evolution = EvolutionMode::kTrotter;

  std::optional<double> width;  ///< unset: default_gaussian_width(model)
  double displacement = 0.0;    ///< amplitude of the initial standing wave along mode k

  std::optional<int> ancilla;  ///< unset: 2 b
  double resource_time = 1.0;
  double epsilon = 0.01;
  AncillaMode ancilla_mode = AncillaMode::kParallel;

  int max_qubits = kDefaultMaxStateQubits;

  bool inject_dft_sign_fault = false;

  std::string output_directory = ".";
  std::string output_format = "csv";

  int jobs = 1;

  GridSpec grid() const;
  int ancilla_budget() const { return ancilla.value_or(2 * bits); }
  double gaussian_width() const;
  /// Per-site centers: grid midpoint plus displacement * cos(2 pi j k / N).
  std::vector<double> initial_centers() const;
};

/// Parses "key = value" lines grouped under [section] headers; "section.key" is accepted
/// anywhere. '#' and ';' start comments. Throws ConfigError naming the line.
RunConfig parse_config(std::istream& in);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

/// Every recognised key with a one-line description, in file order.
const std::vector<std::pair<std::string, std::string>>& config_keys();

}  // namespace fputq
