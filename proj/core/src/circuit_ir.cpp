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

#include "fputq/circuit_ir.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "fputq/errors.hpp"

namespace fputq {

int arity(GateKind kind) {
  switch (kind) {
    case GateKind::kH:
    case GateKind::kRz:
    case GateKind::kPhase: return 1;
    case GateKind::kCPhase:
    case GateKind::kCnot: return 2;
    case GateKind::kToffoli: return 3;
  }
  return 0;
}

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::kH: return "H";
    case GateKind::kCPhase: return "CPHASE";
    case GateKind::kRz: return "RZ";
    case GateKind::kCnot: return "CNOT";
    case GateKind::kToffoli: return "TOFFOLI";
    case GateKind::kPhase: return "PHASE";
  }
  return "?";
}

GateKind parse_gate_kind(std::string_view text) {
  for (auto k : {GateKind::kH, GateKind::kCPhase, GateKind::kRz, GateKind::kCnot, GateKind::kToffoli,
                 GateKind::kPhase}) {
    if (to_string(k) == text) return k;
  }
  throw InputError("unknown gate kind '" + std::string(text) + "'");
}

namespace {

bool has_param(GateKind kind) {
  return kind == GateKind::kCPhase || kind == GateKind::kRz || kind == GateKind::kPhase;
}

}  // namespace

Gate make_gate(GateKind kind, std::initializer_list<int> qubits, double param) {
  if (static_cast<int>(qubits.size()) != arity(kind)) {
    throw InputError(std::string(to_string(kind)) + " takes " + std::to_string(arity(kind)) + " operands");
  }
  Gate g;
  g.kind = kind;
  std::copy(qubits.begin(), qubits.end(), g.qubits.begin());
  g.param = has_param(kind) ? param : 0.0;
  return g;
}

Gate inverse(const Gate& gate) {
  Gate g = gate;
  if (has_param(gate.kind) && g.param != 0.0) g.param = -g.param;
  return g;
}

std::string_view to_string(LayerTag tag) {
  switch (tag) {
    case LayerTag::kNone: return "none";
    case LayerTag::kKinetic: return "kinetic";
    case LayerTag::kPotentialEven: return "potential-even";
    case LayerTag::kPotentialOdd: return "potential-odd";
    case LayerTag::kQuadrature: return "quadrature";
    case LayerTag::kMeasure: return "measure";
  }
  return "?";
}

LayerTag parse_layer_tag(std::string_view text) {
  for (auto t : {LayerTag::kNone, LayerTag::kKinetic, LayerTag::kPotentialEven, LayerTag::kPotentialOdd,
                 LayerTag::kQuadrature, LayerTag::kMeasure}) {
    if (to_string(t) == text) return t;
  }
  throw InputError("unknown layer tag '" + std::string(text) + "'");
}

GateCounts& GateCounts::operator+=(const GateCounts& o) {
  hadamard += o.hadamard;
  cphase += o.cphase;
  rz += o.rz;
  toffoli += o.toffoli;
  cnot += o.cnot;
  phase += o.phase;
  return *this;
}

GateCounts GateCounts::scaled(std::uint64_t factor) const {
  return {hadamard * factor, cphase * factor, rz * factor, toffoli * factor, cnot * factor, phase * factor};
}

void CircuitIR::add(const Gate& gate, LayerTag tag) {
  const auto ops = gate.operands();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i] < 0 || ops[i] >= n_qubits_) {
      throw InputError("operand " + std::to_string(ops[i]) + " outside [0, " + std::to_string(n_qubits_) + ")");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (ops[i] == ops[j]) throw InputError("repeated operand " + std::to_string(ops[i]));
    }
  }
  for (std::size_t i = ops.size(); i < gate.qubits.size(); ++i) {
    if (gate.qubits[i] != -1) throw InputError("unused operand slots must be -1");
  }
  gates_.push_back(gate);
  tags_.push_back(tag);
}

void CircuitIR::add(GateKind kind, std::initializer_list<int> qubits, double param, LayerTag tag) {
  add(make_gate(kind, qubits, param), tag);
}

void CircuitIR::barrier() {
  if (!gates_.empty() && (barriers_.empty() || barriers_.back() != gates_.size())) barriers_.push_back(gates_.size());
}

void CircuitIR::end_block(std::string label, std::size_t begin) {
  if (begin > gates_.size()) throw InputError("block begins past the end of the circuit");
  blocks_.push_back({std::move(label), begin, gates_.size()});
}

void CircuitIR::add_block(GateBlock block) {
  if (block.begin > block.end || block.end > gates_.size()) throw InputError("block '" + block.label + "' outside the circuit");
  blocks_.push_back(std::move(block));
}

void CircuitIR::append(const CircuitIR& other, int offset, LayerTag retag) {
  const std::size_t base = gates_.size();
  n_qubits_ = std::max(n_qubits_, other.n_qubits_ + offset);
  for (std::size_t i = 0; i < other.gates_.size(); ++i) {
    Gate g = other.gates_[i];
    for (int k = 0; k < arity(g.kind); ++k) g.qubits[k] += offset;
    add(g, retag == LayerTag::kNone ? other.tags_[i] : retag);
  }
  for (auto b : other.barriers_) barriers_.push_back(base + b);
  for (const auto& blk : other.blocks_) blocks_.push_back({blk.label, base + blk.begin, base + blk.end});
}

void CircuitIR::append_mirror(std::size_t begin, std::size_t end, std::string label, LayerTag tag) {
  if (begin > end || end > gates_.size()) throw InputError("mirror range outside the circuit");
  const std::size_t start = gates_.size();
  for (std::size_t i = end; i-- > begin;) add(inverse(gates_[i]), tag);
  end_block(std::move(label), start);
}

GateCounts CircuitIR::counts() const {
  GateCounts c;
  for (const auto& g : gates_) {
    switch (g.kind) {
      case GateKind::kH: ++c.hadamard; break;
      case GateKind::kCPhase: ++c.cphase; break;
      case GateKind::kRz: ++c.rz; break;
      case GateKind::kCnot: ++c.cnot; break;
      case GateKind::kToffoli: ++c.toffoli; break;
      case GateKind::kPhase: ++c.phase; break;
    }
  }
  return c;
}

std::uint64_t CircuitIR::depth() const {
  std::vector<std::uint64_t> level(static_cast<std::size_t>(n_qubits_), 0);
  std::uint64_t floor = 0;  // level every qubit is raised to at the last barrier
  std::uint64_t deepest = 0;
  std::size_t next_barrier = 0;
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    while (next_barrier < barriers_.size() && barriers_[next_barrier] == i) {
      floor = deepest;
      ++next_barrier;
    }
    const auto ops = gates_[i].operands();
    std::uint64_t start = floor;
    for (int q : ops) start = std::max(start, level[q]);
    for (int q : ops) level[q] = start + 1;
    deepest = std::max(deepest, start + 1);
  }
  return deepest;
}

CircuitIR build_qft_ir(int b) {
  if (b < 1) throw InputError("QFT needs at least one qubit");
  CircuitIR ir(b);
  for (int j = 0; j < b; ++j) {
    ir.add(GateKind::kH, {j});
    for (int l = 2; l <= b - j; ++l) ir.add(GateKind::kCPhase, {j + l - 1, j}, static_cast<double>(l));
  }
  return ir;
}

CircuitIR build_inverse_qft_ir(int b) {
  const CircuitIR fwd = build_qft_ir(b);
  CircuitIR ir(b);
  for (auto it = fwd.gates().rbegin(); it != fwd.gates().rend(); ++it) ir.add(inverse(*it));
  return ir;
}

namespace {

/// count Toffolis with distinct controls from `reg` and targets cycling through `work`.
void emit_squaring(CircuitIR& ir, const std::vector<int>& reg, const std::vector<int>& work, std::uint64_t count,
                   LayerTag tag) {
  const auto len = reg.size();
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    const auto i = idx % len;
    const auto l = (i + 1 + (idx / len) % (len - 1)) % len;
    ir.add(GateKind::kToffoli, {reg[i], reg[l], work[idx % work.size()]}, 0.0, tag);
  }
}

std::vector<int> qubit_range(int start, int count) {
  std::vector<int> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) v[i] = start + i;
  return v;
}

void check_layer_inputs(int n_sites, int b) {
  if (n_sites < 2) throw InputError("circuit layers need N >= 2");
  if (b < 2) throw InputError("circuit layers need b >= 2");
}

/// Kinetic layer on data qubits [0, N b) with ancillas from `anc_base`.
void emit_kinetic(CircuitIR& ir, int n_sites, int b, int a, AncillaMode mode, const CostModel& cost, int anc_base) {
  const CircuitIR qft = build_qft_ir(b);
  const CircuitIR iqft = build_inverse_qft_ir(b);
  const auto sq = static_cast<std::uint64_t>(cost.squaring_toffoli_per_b2) * b * b;
  for (int j = 0; j < n_sites; ++j) {
    const auto data = qubit_range(j * b, b);
    const auto bank = qubit_range(anc_base + (mode == AncillaMode::kParallel ? j * a : 0), a);
    ir.append(qft, j * b, LayerTag::kKinetic);
    const auto begin = ir.begin_block();
    emit_squaring(ir, data, bank, sq, LayerTag::kKinetic);
    ir.end_block("SQ", begin);
    for (int r = 0; r < b; ++r) ir.add(GateKind::kCPhase, {bank[r], data[r]}, static_cast<double>(r + 2), LayerTag::kKinetic);
    ir.append_mirror(begin, begin + sq, "SQ^dag", LayerTag::kKinetic);
    ir.append(iqft, j * b, LayerTag::kKinetic);
  }
}

/// One bond: SUB, Phi_2, Phi_4, UNSUB. `slot` holds b difference qubits and one phase target.
void emit_bond(CircuitIR& ir, int site_a, int site_b, int b, const std::vector<int>& slot, const CostModel& cost,
               LayerTag tag) {
  const auto s0 = qubit_range(site_a * b, b);
  const auto s1 = qubit_range(site_b * b, b);
  const std::vector<int> diff(slot.begin(), slot.begin() + b);
  const std::vector<int> ref{slot[b]};

  const auto sub = ir.begin_block();
  for (int i = 0; i < b; ++i) {
    for (int k = 0; k < cost.subtractor_cnot_per_bit; ++k) {
      ir.add(GateKind::kCnot, {k % 2 == 0 ? s1[i] : s0[i], diff[i]}, 0.0, tag);
    }
    for (int k = 0; k < cost.subtractor_toffoli_per_bit; ++k) {
      ir.add(GateKind::kToffoli, {s0[i], diff[i], diff[(i + 1) % b]}, 0.0, tag);
    }
  }
  ir.end_block("SUB", sub);
  const auto sub_end = ir.gates().size();

  const auto sq = static_cast<std::uint64_t>(cost.squaring_toffoli_per_b2) * b * b;
  for (auto [label, factor] : {std::pair{"PHI2", 1}, std::pair{"PHI4", 2}}) {
    const auto begin = ir.begin_block();
    emit_squaring(ir, diff, ref, factor * sq, tag);
    ir.end_block(label, begin);
    const auto end = ir.gates().size();
    ir.add(GateKind::kPhase, {ref[0]}, 1.0, tag);
    ir.append_mirror(begin, end, std::string(label) + "^dag", tag);
  }
  ir.append_mirror(sub, sub_end, "SUB^dag", tag);
}

void emit_potential(CircuitIR& ir, int n_sites, int b, const CostModel& cost, int anc_base) {
  // Even bonds, then odd bonds; for odd N the wrap bond (N-1, 0) gets its own layer.
  const bool odd = n_sites % 2 != 0;
  const int paired = odd ? n_sites - 1 : n_sites;
  auto layer = [&](int first, int last_exclusive, LayerTag tag) {
    int slot_index = 0;
    for (int j = first; j < last_exclusive; j += 2) {
      const auto slot = qubit_range(anc_base + slot_index * (b + 1), b + 1);
      emit_bond(ir, j, (j + 1) % n_sites, b, slot, cost, tag);
      ++slot_index;
    }
  };
  layer(0, paired, LayerTag::kPotentialEven);
  layer(1, paired, LayerTag::kPotentialOdd);
  if (odd) layer(n_sites - 1, n_sites, LayerTag::kPotentialOdd);
}

int potential_slots(int n_sites) { return n_sites / 2; }

}  // namespace

std::string_view to_string(AncillaMode mode) { return mode == AncillaMode::kSerial ? "serial" : "parallel"; }

AncillaMode parse_ancilla_mode(std::string_view text) {
  if (text == "serial") return AncillaMode::kSerial;
  if (text == "parallel") return AncillaMode::kParallel;
  throw InputError("unknown ancilla mode '" + std::string(text) + "' (expected serial or parallel)");
}

CircuitIR build_kinetic_layer_ir(int n_sites, int b, int a, AncillaMode mode, const CostModel& cost) {
  check_layer_inputs(n_sites, b);
  if (a < b) throw InputError("kinetic ancilla budget a must be >= b");
  const int banks = mode == AncillaMode::kParallel ? n_sites : 1;
  CircuitIR ir(n_sites * b + banks * a);
  emit_kinetic(ir, n_sites, b, a, mode, cost, n_sites * b);
  return ir;
}

CircuitIR build_potential_layer_ir(int n_sites, int b, const CostModel& cost) {
  check_layer_inputs(n_sites, b);
  CircuitIR ir(n_sites * b + potential_slots(n_sites) * (b + 1));
  emit_potential(ir, n_sites, b, cost, n_sites * b);
  return ir;
}

CircuitIR build_quadrature_layer_ir(const GridSpec& grid, int n_sites, const QuadratureWeights& w, Quadrature which,
                                    double theta) {
  if (static_cast<int>(w.w_cos.size()) != n_sites) throw ShapeError("weights do not match the site count");
  CircuitIR ir(n_sites * grid.bits_per_site);
  for (const auto& a : rz_angles(grid, w, which, theta)) {
    ir.add(GateKind::kRz, {a.site * grid.bits_per_site + a.bit}, a.angle, LayerTag::kQuadrature);
  }
  return ir;
}

std::pair<int, int> layers_per_step(TrotterOrder order) {
  switch (order) {
    case TrotterOrder::kFirst: return {1, 1};
    case TrotterOrder::kSecond: return {2, 1};
    case TrotterOrder::kSuzuki4: return {10, 5};
  }
  return {0, 0};
}

CircuitIR build_trotter_circuit(int n_sites, int b, int a, TrotterOrder order, int n_steps,
                                const TrotterCircuitOptions& options) {
  check_layer_inputs(n_sites, b);
  if (a < b) throw InputError("kinetic ancilla budget a must be >= b");
  if (n_steps < 1) throw InputError("n_steps must be >= 1");

  const int banks = options.mode == AncillaMode::kParallel ? n_sites : 1;
  const int pool = std::max(banks * a, potential_slots(n_sites) * (b + 1));
  const int anc_base = n_sites * b;

  // One step as a sequence of layer kinds (true = kinetic).
  std::vector<bool> step;
  switch (order) {
    case TrotterOrder::kFirst: step = {true, false}; break;
    case TrotterOrder::kSecond: step = {true, false, true}; break;
    case TrotterOrder::kSuzuki4:
      for (int i = 0; i < 5; ++i) step.insert(step.end(), {true, false, true});
      break;
  }

  CircuitIR ir(anc_base + pool);
  bool previous_kinetic = false;
  for (int s = 0; s < n_steps; ++s) {
    for (bool kinetic : step) {
      if (kinetic) {
        if (options.merge_kinetic && previous_kinetic) continue;
        emit_kinetic(ir, n_sites, b, a, options.mode, options.cost, anc_base);
      } else {
        emit_potential(ir, n_sites, b, options.cost, anc_base);
      }
      previous_kinetic = kinetic;
    }
    if (!options.merge_kinetic) ir.barrier();
  }
  return ir;
}

bool verify_uncompute_symmetry(const CircuitIR& ir) {
  const auto& blocks = ir.blocks();
  const auto& gates = ir.gates();
  constexpr std::string_view kDag = "^dag";
  std::vector<bool> used(blocks.size(), false);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& fwd = blocks[i];
    if (fwd.label.ends_with(kDag)) continue;
    bool matched = false;
    for (std::size_t j = i + 1; j < blocks.size() && !matched; ++j) {
      const auto& inv = blocks[j];
      if (used[j] || inv.label != fwd.label + std::string(kDag)) continue;
      if (inv.end - inv.begin != fwd.end - fwd.begin) continue;
      bool same = true;
      for (std::size_t k = 0; k < fwd.end - fwd.begin && same; ++k) {
        same = gates[inv.begin + k] == inverse(gates[fwd.end - 1 - k]);
      }
      if (same) {
        used[j] = true;
        matched = true;
      }
    }
    if (!matched) return false;
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].label.ends_with(kDag) && !used[i]) return false;
  }
  return true;
}

void export_ir_text(std::ostream& out, const CircuitIR& ir) {
  out << "QUBITS " << ir.n_qubits() << '\n';
  const auto& gates = ir.gates();
  const auto& barriers = ir.barriers();
  std::size_t next_barrier = 0;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    while (next_barrier < barriers.size() && barriers[next_barrier] == i) {
      out << "BARRIER\n";
      ++next_barrier;
    }
    const auto& g = gates[i];
    out << to_string(g.kind);
    for (int q : g.operands()) out << ' ' << q;
    if (has_param(g.kind)) {
      out << ' ' << std::setprecision(std::numeric_limits<double>::max_digits10) << g.param;
    }
    if (ir.tags()[i] != LayerTag::kNone) out << " @" << to_string(ir.tags()[i]);
    out << '\n';
  }
  for (; next_barrier < barriers.size(); ++next_barrier) out << "BARRIER\n";
  for (const auto& b : ir.blocks()) out << "BLOCK " << b.label << ' ' << b.begin << ' ' << b.end << '\n';
}

std::string export_ir_text(const CircuitIR& ir) {
  std::ostringstream os;
  export_ir_text(os, ir);
  return os.str();
}

namespace {

template <typename T>
T parse_number(const std::string& token, int line) {
  T value{};
  if constexpr (std::is_floating_point_v<T>) {
    try {
      std::size_t used = 0;
      value = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw InputError("IR line " + std::to_string(line) + ": bad number '" + token + "'");
    }
  } else {
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw InputError("IR line " + std::to_string(line) + ": bad integer '" + token + "'");
    }
  }
  return value;
}

}  // namespace

CircuitIR parse_ir_text(std::istream& in) {
  std::string line;
  int line_no = 0;
  CircuitIR ir;
  bool header = false;
  std::vector<std::size_t> barrier_positions;
  std::vector<GateBlock> blocks;
  std::vector<std::pair<Gate, LayerTag>> gates;
  int n_qubits = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (!header) {
      if (tok.size() != 2 || tok[0] != "QUBITS") throw InputError("IR text must start with 'QUBITS n'");
      n_qubits = parse_number<int>(tok[1], line_no);
      header = true;
      continue;
    }
    if (tok[0] == "BARRIER") {
      barrier_positions.push_back(gates.size());
      continue;
    }
    if (tok[0] == "BLOCK") {
      if (tok.size() != 4) throw InputError("IR line " + std::to_string(line_no) + ": BLOCK label begin end");
      blocks.push_back({tok[1], parse_number<std::size_t>(tok[2], line_no), parse_number<std::size_t>(tok[3], line_no)});
      continue;
    }
    Gate g;
    g.kind = parse_gate_kind(tok[0]);
    const int n = arity(g.kind);
    LayerTag tag = LayerTag::kNone;
    if (tok.back().starts_with("@")) {
      tag = parse_layer_tag(std::string_view(tok.back()).substr(1));
      tok.pop_back();
    }
    const std::size_t expected = 1 + n + (has_param(g.kind) ? 1 : 0);
    if (tok.size() != expected) throw InputError("IR line " + std::to_string(line_no) + ": wrong field count");
    for (int k = 0; k < n; ++k) g.qubits[k] = parse_number<int>(tok[1 + k], line_no);
    if (has_param(g.kind)) g.param = parse_number<double>(tok[1 + n], line_no);
    gates.emplace_back(g, tag);
  }
  if (!header) throw InputError("empty IR text");
  ir.set_n_qubits(n_qubits);
  std::size_t next_barrier = 0;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    while (next_barrier < barrier_positions.size() && barrier_positions[next_barrier] == i) {
      ir.barrier();
      ++next_barrier;
    }
    ir.add(gates[i].first, gates[i].second);
  }
  for (; next_barrier < barrier_positions.size(); ++next_barrier) ir.barrier();
  for (auto& b : blocks) ir.add_block(std::move(b));
  return ir;
}

CircuitIR parse_ir_text(const std::string& text) {
  std::istringstream is(text);
  return parse_ir_text(is);
}

}  // namespace fputq
