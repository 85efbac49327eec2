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
#include <string>
#include <vector>

#include "fputq/circuit_ir.hpp"

namespace fputq {

struct ResourceReport {
  int n_sites = 0;
  int bits = 0;
  int ancilla_budget = 0;
  std::string order;
  std::string mode;
  double time = 0.0;
  double epsilon = 0.0;

  // Closed-form qubit figures.
  std::uint64_t qubits_system = 0;         ///< N b
  std::uint64_t qubits_ancilla_bonds = 0;  ///< ceil(N/2) b
  std::uint64_t qubits_serial = 0;         ///< N b + a
  std::uint64_t qubits_parallel = 0;       ///< N (b + a)
  std::uint64_t qubits_total_formula = 0;  ///< ceil(3 N b / 2), leading term of the total
  std::uint64_t qubits_total_constant = 0; ///< O(1) part: the Hadamard-test ancilla
  std::uint64_t qubits_ir = 0;             ///< qubits the generated circuit actually uses

  // Counts from the generated circuit.
  GateCounts gate_counts;  ///< whole evolution, trotter_steps * per-step counts
  std::uint64_t gates_per_step = 0;
  std::uint64_t depth_per_step = 0;
  std::uint64_t trotter_steps = 0;
  std::uint64_t measurement_overhead = 0;  ///< Hadamard-test frame depth
  std::uint64_t total_depth = 0;           ///< trotter_steps * depth_per_step + measurement_overhead
  std::uint64_t correlator_execution_depth = 0;  ///< forward and backward evolution plus the frame

  // Leading-order asymptotic figures with unit prefactor, reported alongside the IR numbers.
  std::uint64_t formula_gates_per_step = 0;  ///< N b^2
  std::uint64_t formula_depth_per_step = 0;  ///< b

  friend bool operator==(const ResourceReport&, const ResourceReport&) = default;
};

/// n = ceil(Lambda * t^(1 + 1/(2p)) * epsilon^(-1/(2p))) with 2p the accuracy order
/// (p = 1/2 for first order). Requires t > 0 and 0 < epsilon < 1.
std::uint64_t trotter_step_count(TrotterOrder order, double t, double epsilon, double prefactor = 1.0);

std::uint64_t qubits_total_formula(int n_sites, int b);

/// Depth of H, controlled exp(i theta2 Q), controlled exp(i theta1 Q), H on one ancilla
/// controlling N b rotations each (every controlled Rz as 2 CNOT + 2 Rz).
std::uint64_t hadamard_frame_depth(int n_sites, int b);

ResourceReport resource_report(int n_sites, int b, int a, TrotterOrder order, double t, double epsilon,
                               AncillaMode mode = AncillaMode::kParallel, const CostModel& cost = kDefaultCostModel);

/// Flat JSON object; gate counts appear as "gate_counts.hadamard" etc.
std::string to_json_text(const ResourceReport& report, int indent = 2);
ResourceReport resource_report_from_json(const std::string& text);

struct TableOneRow {
  int n_sites;
  int bits;
  int ancilla;
  std::uint64_t serial;
  std::uint64_t parallel;
};

/// Serial/parallel qubit rows for N in {8, 16, 32}, b = 6, a = 12.
std::vector<TableOneRow> table_one_rows();

}  // namespace fputq
