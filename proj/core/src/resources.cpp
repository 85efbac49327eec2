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

#include "fputq/resources.hpp"

#include <cmath>
#include <json.hpp>

#include "fputq/errors.hpp"

namespace fputq {

std::uint64_t trotter_step_count(TrotterOrder order, double t, double epsilon, double prefactor) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InputError("t must be positive and finite");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in (0, 1)");
  if (!(prefactor > 0.0)) throw InputError("step prefactor must be positive");
  const double two_p = accuracy_order(order);
  const double n = prefactor * std::pow(t, 1.0 + 1.0 / two_p) * std::pow(epsilon, -1.0 / two_p);
  // Guard against pow round-off pushing an exact integer just above itself.
  const double rounded = std::round(n);
  const double value = std::abs(n - rounded) < 1e-9 * std::max(1.0, n) ? rounded : std::ceil(n);
  return static_cast<std::uint64_t>(std::max(1.0, value));
}

std::uint64_t qubits_total_formula(int n_sites, int b) {
  if (n_sites < 1 || b < 1) throw InputError("qubits_total_formula needs N >= 1 and b >= 1");
  const auto nb = static_cast<std::uint64_t>(n_sites) * static_cast<std::uint64_t>(b);
  return (3 * nb + 1) / 2;
}

std::uint64_t hadamard_frame_depth(int n_sites, int b) {
  if (n_sites < 1 || b < 1) throw InputError("hadamard_frame_depth needs N >= 1 and b >= 1");
  const int anc = n_sites * b;
  CircuitIR ir(anc + 1);
  ir.add(GateKind::kH, {anc}, 0.0, LayerTag::kMeasure);
  for (int rep = 0; rep < 2; ++rep) {
    for (int q = 0; q < anc; ++q) {
      ir.add(GateKind::kCnot, {anc, q}, 0.0, LayerTag::kMeasure);
      ir.add(GateKind::kRz, {q}, -0.5, LayerTag::kMeasure);
      ir.add(GateKind::kCnot, {anc, q}, 0.0, LayerTag::kMeasure);
      ir.add(GateKind::kRz, {q}, 0.5, LayerTag::kMeasure);
    }
  }
  ir.add(GateKind::kH, {anc}, 0.0, LayerTag::kMeasure);
  return ir.depth();
}

ResourceReport resource_report(int n_sites, int b, int a, TrotterOrder order, double t, double epsilon,
                               AncillaMode mode, const CostModel& cost) {
  if (n_sites < 2) throw InputError("resource_report needs N >= 2");
  if (b < 2) throw InputError("resource_report needs b >= 2");
  if (a < b) throw InputError("ancilla budget a must be >= b");

  ResourceReport r;
  r.n_sites = n_sites;
  r.bits = b;
  r.ancilla_budget = a;
  r.order = std::string(to_string(order));
  r.mode = std::string(to_string(mode));
  r.time = t;
  r.epsilon = epsilon;

  const auto N = static_cast<std::uint64_t>(n_sites);
  const auto B = static_cast<std::uint64_t>(b);
  const auto A = static_cast<std::uint64_t>(a);
  r.qubits_system = N * B;
  r.qubits_ancilla_bonds = ((N + 1) / 2) * B;
  r.qubits_serial = N * B + A;
  r.qubits_parallel = N * (B + A);
  r.qubits_total_formula = qubits_total_formula(n_sites, b);
  r.qubits_total_constant = 1;

  r.trotter_steps = trotter_step_count(order, t, epsilon, cost.step_prefactor);

  TrotterCircuitOptions options;
  options.mode = mode;
  options.cost = cost;
  const CircuitIR step = build_trotter_circuit(n_sites, b, a, order, 1, options);
  r.qubits_ir = static_cast<std::uint64_t>(step.n_qubits()) + 1;
  const GateCounts per_step = step.counts();
  r.gates_per_step = per_step.total();
  r.depth_per_step = step.depth();
  r.gate_counts = per_step.scaled(r.trotter_steps);
  r.measurement_overhead = hadamard_frame_depth(n_sites, b);
  r.total_depth = r.trotter_steps * r.depth_per_step + r.measurement_overhead;
  r.correlator_execution_depth = 2 * r.trotter_steps * r.depth_per_step + r.measurement_overhead;

  r.formula_gates_per_step = N * B * B;
  r.formula_depth_per_step = B;
  return r;
}

namespace {

using nlohmann::ordered_json;

template <typename T>
T required(const ordered_json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("resource JSON lacks '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(std::string("resource JSON field '") + key + "' has the wrong type");
  }
}

}  // namespace

std::string to_json_text(const ResourceReport& r, int indent) {
  ordered_json j;
  j["n_sites"] = r.n_sites;
  j["bits"] = r.bits;
  j["ancilla_budget"] = r.ancilla_budget;
  j["order"] = r.order;
  j["mode"] = r.mode;
  j["time"] = r.time;
  j["epsilon"] = r.epsilon;
  j["qubits_system"] = r.qubits_system;
  j["qubits_ancilla_bonds"] = r.qubits_ancilla_bonds;
  j["qubits_serial"] = r.qubits_serial;
  j["qubits_parallel"] = r.qubits_parallel;
  j["qubits_total_formula"] = r.qubits_total_formula;
  j["qubits_total_constant"] = r.qubits_total_constant;
  j["qubits_ir"] = r.qubits_ir;
  j["gate_counts.hadamard"] = r.gate_counts.hadamard;
  j["gate_counts.cphase"] = r.gate_counts.cphase;
  j["gate_counts.rz"] = r.gate_counts.rz;
  j["gate_counts.toffoli"] = r.gate_counts.toffoli;
  j["gate_counts.cnot"] = r.gate_counts.cnot;
  j["gate_counts.phase"] = r.gate_counts.phase;
  j["gates_per_step"] = r.gates_per_step;
  j["depth_per_step"] = r.depth_per_step;
  j["trotter_steps"] = r.trotter_steps;
  j["measurement_overhead"] = r.measurement_overhead;
  j["total_depth"] = r.total_depth;
  j["correlator_execution_depth"] = r.correlator_execution_depth;
  j["formula_gates_per_step"] = r.formula_gates_per_step;
  j["formula_depth_per_step"] = r.formula_depth_per_step;
  return j.dump(indent);
}

ResourceReport resource_report_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("resource JSON does not parse: ") + e.what());
  }
  if (!j.is_object()) throw InputError("resource JSON must be an object");
  ResourceReport r;
  r.n_sites = required<int>(j, "n_sites");
  r.bits = required<int>(j, "bits");
  r.ancilla_budget = required<int>(j, "ancilla_budget");
  r.order = required<std::string>(j, "order");
  r.mode = required<std::string>(j, "mode");
  r.time = required<double>(j, "time");
  r.epsilon = required<double>(j, "epsilon");
  r.qubits_system = required<std::uint64_t>(j, "qubits_system");
  r.qubits_ancilla_bonds = required<std::uint64_t>(j, "qubits_ancilla_bonds");
  r.qubits_serial = required<std::uint64_t>(j, "qubits_serial");
  r.qubits_parallel = required<std::uint64_t>(j, "qubits_parallel");
  r.qubits_total_formula = required<std::uint64_t>(j, "qubits_total_formula");
  r.qubits_total_constant = required<std::uint64_t>(j, "qubits_total_constant");
  r.qubits_ir = required<std::uint64_t>(j, "qubits_ir");
  r.gate_counts.hadamard = required<std::uint64_t>(j, "gate_counts.hadamard");
  r.gate_counts.cphase = required<std::uint64_t>(j, "gate_counts.cphase");
  r.gate_counts.rz = required<std::uint64_t>(j, "gate_counts.rz");
  r.gate_counts.toffoli = required<std::uint64_t>(j, "gate_counts.toffoli");
  r.gate_counts.cnot = required<std::uint64_t>(j, "gate_counts.cnot");
  r.gate_counts.phase = required<std::uint64_t>(j, "gate_counts.phase");
  r.gates_per_step = required<std::uint64_t>(j, "gates_per_step");
  r.depth_per_step = required<std::uint64_t>(j, "depth_per_step");
  r.trotter_steps = required<std::uint64_t>(j, "trotter_steps");
  r.measurement_overhead = required<std::uint64_t>(j, "measurement_overhead");
  r.total_depth = required<std::uint64_t>(j, "total_depth");
  r.correlator_execution_depth = required<std::uint64_t>(j, "correlator_execution_depth");
  r.formula_gates_per_step = required<std::uint64_t>(j, "formula_gates_per_step");
  r.formula_depth_per_step = required<std::uint64_t>(j, "formula_depth_per_step");
  return r;
}

std::vector<TableOneRow> table_one_rows() {
  std::vector<TableOneRow> rows;
  constexpr int kBits = 6;
  constexpr int kAncilla = 12;
  for (int n : {8, 16, 32}) {
    const auto r = resource_report(n, kBits, kAncilla, TrotterOrder::kSecond, 1.0, 0.01);
    rows.push_back({n, kBits, kAncilla, r.qubits_serial, r.qubits_parallel});
  }
  return rows;
}

}  // namespace fputq
