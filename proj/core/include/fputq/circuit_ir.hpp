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

#include <array>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fputq/propagator.hpp"
#include "fputq/quadratures.hpp"

namespace fputq {

enum class GateKind {
  kH,        ///< 1 qubit
  kCPhase,   ///< 2 qubits (control, target); param = signed level l, angle sign(l) * 2 pi / 2^|l|
  kRz,       ///< 1 qubit; param = angle
  kCnot,     ///< 2 qubits (control, target)
  kToffoli,  ///< 3 qubits (control, control, target)
  kPhase,    ///< 1 qubit; param = angle
};

int arity(GateKind kind);
std::string_view to_string(GateKind kind);
GateKind parse_gate_kind(std::string_view text);

struct Gate {
  GateKind kind = GateKind::kH;
  std::array<int, 3> qubits{-1, -1, -1};
  double param = 0.0;

  std::span<const int> operands() const { return {qubits.data(), static_cast<std::size_t>(arity(kind))}; }
  friend bool operator==(const Gate&, const Gate&) = default;
};

Gate make_gate(GateKind kind, std::initializer_list<int> qubits, double param = 0.0);

/// Inverse of a single gate (self-inverse gates map to themselves).
Gate inverse(const Gate& gate);

enum class LayerTag { kNone, kKinetic, kPotentialEven, kPotentialOdd, kQuadrature, kMeasure };

std::string_view to_string(LayerTag tag);
LayerTag parse_layer_tag(std::string_view text);

/// Named contiguous gate range [begin, end), used for compute/uncompute pairing.
struct GateBlock {
  std::string label;
  std::size_t begin = 0;
  std::size_t end = 0;
  friend bool operator==(const GateBlock&, const GateBlock&) = default;
};

struct GateCounts {
  std::uint64_t hadamard = 0;
  std::uint64_t cphase = 0;
  std::uint64_t rz = 0;
  std::uint64_t toffoli = 0;
  std::uint64_t cnot = 0;
  std::uint64_t phase = 0;

  std::uint64_t total() const { return hadamard + cphase + rz + toffoli + cnot + phase; }
  GateCounts& operator+=(const GateCounts& o);
  GateCounts scaled(std::uint64_t factor) const;
  friend bool operator==(const GateCounts&, const GateCounts&) = default;
};

class CircuitIR {
 public:
  CircuitIR() = default;
  explicit CircuitIR(int n_qubits) : n_qubits_(n_qubits) {}

  int n_qubits() const { return n_qubits_; }
  void set_n_qubits(int n) { n_qubits_ = n; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<LayerTag>& tags() const { return tags_; }
  const std::vector<std::size_t>& barriers() const { return barriers_; }
  const std::vector<GateBlock>& blocks() const { return blocks_; }

  /// Throws InputError on wrong arity, repeated operands or indices >= n_qubits.
  void add(const Gate& gate, LayerTag tag = LayerTag::kNone);
  void add(GateKind kind, std::initializer_list<int> qubits, double param = 0.0, LayerTag tag = LayerTag::kNone);

  /// Scheduling fence before the next gate: nothing after it starts before everything before it ends.
  void barrier();

  std::size_t begin_block() const { return gates_.size(); }
  void end_block(std::string label, std::size_t begin);
  /// Records an explicit block; throws InputError if it does not lie within the circuit.
  void add_block(GateBlock block);

  /// Appends `other` with qubit indices shifted by `offset`; grows n_qubits as needed.
  void append(const CircuitIR& other, int offset = 0, LayerTag retag = LayerTag::kNone);

  /// Appends the inverse of gates [begin, end) in reverse order, recorded as block `label`.
  void append_mirror(std::size_t begin, std::size_t end, std::string label, LayerTag tag);

  GateCounts counts() const;

  /// As-soon-as-possible layered depth, honoring barriers.
  std::uint64_t depth() const;

  friend bool operator==(const CircuitIR&, const CircuitIR&) = default;

 private:
  int n_qubits_ = 0;
  std::vector<Gate> gates_;
  std::vector<LayerTag> tags_;
  std::vector<std::size_t> barriers_;
  std::vector<GateBlock> blocks_;
};

/// Assumed gate costs for the arithmetic blocks; only asymptotics are fixed by
/// the algorithm, so every constant is a declared modeling choice.
struct CostModel {
  int squaring_toffoli_per_b2 = 6;    ///< c_sq: Toffolis per b^2 in one squaring
  int subtractor_cnot_per_bit = 2;    ///< ripple-borrow subtractor: 2b CNOT
  int subtractor_toffoli_per_bit = 1; ///< ... plus b Toffoli
  double step_prefactor = 1.0;        ///< Lambda in the step-count formula
};

inline constexpr CostModel kDefaultCostModel{};

enum class AncillaMode { kSerial, kParallel };

std::string_view to_string(AncillaMode mode);
AncillaMode parse_ancilla_mode(std::string_view text);

/// Textbook QFT on qubits [0, b): b H and b(b-1)/2 controlled phases, no final swaps.
CircuitIR build_qft_ir(int b);
CircuitIR build_inverse_qft_ir(int b);

/// QFT, phase kickback of p^2 through an ancilla bank, uncompute, inverse QFT, on every site.
/// Requires N >= 2, b >= 2, a >= b.
CircuitIR build_kinetic_layer_ir(int n_sites, int b, int a, AncillaMode mode = AncillaMode::kParallel,
                                 const CostModel& cost = kDefaultCostModel);

/// SUB, Phi_2, Phi_4, UNSUB per bond, even bonds then odd bonds (plus one residual
/// layer for odd N). Each bond slot owns b + 1 ancillas (difference register and phase target).
CircuitIR build_potential_layer_ir(int n_sites, int b, const CostModel& cost = kDefaultCostModel);

/// Rz layer implementing exp(i theta Q) on the data register.
CircuitIR build_quadrature_layer_ir(const GridSpec& grid, int n_sites, const QuadratureWeights& w, Quadrature which,
                                    double theta);

struct TrotterCircuitOptions {
  AncillaMode mode = AncillaMode::kParallel;
  /// Fuse adjacent kinetic factors (within a step and across step boundaries). Off by
  /// default so every step has identical, separately accounted depth.
  bool merge_kinetic = false;
  CostModel cost = kDefaultCostModel;
};

/// n_steps Trotter steps separated by barriers; kinetic and potential layers share
/// one ancilla pool starting at qubit N*b.
CircuitIR build_trotter_circuit(int n_sites, int b, int a, TrotterOrder order, int n_steps,
                                const TrotterCircuitOptions& options = {});

/// Numbers of kinetic and potential layers in one unmerged step.
std::pair<int, int> layers_per_step(TrotterOrder order);

/// Every block labelled X has a matching block X^dag holding the reversed inverse gates.
bool verify_uncompute_symmetry(const CircuitIR& ir);

/// Text format: header "QUBITS n", then one line per gate "KIND q... [param] [@tag]",
/// "BARRIER" lines and trailing "BLOCK label begin end" lines.
void export_ir_text(std::ostream& out, const CircuitIR& ir);
std::string export_ir_text(const CircuitIR& ir);
CircuitIR parse_ir_text(std::istream& in);
CircuitIR parse_ir_text(const std::string& text);

}  // namespace fputq
