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

#include "fputq/state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "fputq/errors.hpp"

namespace fputq {

void SiteLayout::decode(std::uint64_t index, std::span<std::uint64_t> registers) const {
  if (registers.size() != static_cast<std::size_t>(n_sites)) throw ShapeError("register buffer size mismatch");
  for (int j = 0; j < n_sites; ++j) registers[j] = site_value(index, j);
}

std::uint64_t SiteLayout::encode(std::span<const std::uint64_t> registers) const {
  if (registers.size() != static_cast<std::size_t>(n_sites)) throw ShapeError("register buffer size mismatch");
  std::uint64_t index = 0;
  for (int j = 0; j < n_sites; ++j) {
    if (registers[j] > site_mask()) throw InputError("register value exceeds 2^b - 1");
    index |= registers[j] << (j * bits_per_site);
  }
  return index;
}

void check_state_capacity(const SiteLayout& layout, int max_qubits) {
  if (layout.n_sites < 1 || layout.bits_per_site < 1) throw InputError("empty site layout");
  if (layout.total_qubits() > max_qubits) {
    throw CapacityError("statevector over N*b = " + std::to_string(layout.total_qubits()) +
                        " qubits exceeds the ceiling of " + std::to_string(max_qubits));
  }
}

LatticeState::LatticeState(SiteLayout layout, int max_qubits) : layout_(layout) {
  check_state_capacity(layout, max_qubits);
  try {
    amplitudes_.assign(layout.dimension(), Complex{});
  } catch (const std::bad_alloc&) {
    throw CapacityError("cannot allocate " + std::to_string(layout.dimension()) + " amplitudes");
  }
}

LatticeState LatticeState::basis_state(SiteLayout layout, std::uint64_t index) {
  LatticeState s(layout);
  if (index >= s.size()) throw InputError("basis index out of range");
  s.amplitudes_[index] = 1.0;
  return s;
}

double LatticeState::norm() const {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return std::sqrt(sum);
}

void LatticeState::normalize() {
  const double n = norm();
  if (!(n > 0.0)) throw InputError("cannot normalize a zero state");
  const double inv = 1.0 / n;
  for (auto& a : amplitudes_) a *= inv;
}

void LatticeState::require_same_shape(const LatticeState& other) const {
  if (layout_ != other.layout_) {
    throw ShapeError("state layouts differ: (N=" + std::to_string(layout_.n_sites) +
                     ", b=" + std::to_string(layout_.bits_per_site) + ") vs (N=" +
                     std::to_string(other.layout_.n_sites) + ", b=" + std::to_string(other.layout_.bits_per_site) +
                     ")");
  }
}

double grid_center(const GridSpec& grid) { return -0.5 * grid.spacing(); }

double default_gaussian_width(const ModelParams& params) {
  return std::sqrt(params.hbar / (2.0 * params.mass * mean_nonzero_frequency(params)));
}

LatticeState init_product_gaussian(const ModelParams& params, const GridSpec& grid, double width) {
  const std::vector<double> centers(static_cast<std::size_t>(params.n_sites), grid_center(grid));
  return init_product_gaussian(params, grid, width, centers);
}

LatticeState init_product_gaussian(const ModelParams& params, const GridSpec& grid, double width,
                                   std::span<const double> centers) {
  params.validate();
  grid.validate();
  if (!(width > 0.0)) throw InputError("Gaussian width must be positive");
  if (centers.size() != static_cast<std::size_t>(params.n_sites)) throw ShapeError("one center per site required");

  const SiteLayout layout{params.n_sites, grid.bits_per_site};
  LatticeState state(layout);

  // Per-site normalized profiles; the product is then normalized by construction.
  const auto levels = grid.levels();
  std::vector<std::vector<double>> profiles(centers.size(), std::vector<double>(levels));
  for (std::size_t j = 0; j < centers.size(); ++j) {
    double sum = 0.0;
    for (std::uint64_t x = 0; x < levels; ++x) {
      const double d = position_value(grid, x) - centers[j];
      profiles[j][x] = std::exp(-d * d / (4.0 * width * width));
      sum += profiles[j][x] * profiles[j][x];
    }
    const double inv = 1.0 / std::sqrt(sum);
    for (auto& v : profiles[j]) v *= inv;
  }

  auto amps = state.amplitudes();
  for (std::uint64_t X = 0; X < amps.size(); ++X) {
    double a = 1.0;
    for (int j = 0; j < layout.n_sites; ++j) a *= profiles[j][layout.site_value(X, j)];
    amps[X] = a;
  }
  state.normalize();
  return state;
}

Complex inner(const LatticeState& lhs, const LatticeState& rhs) {
  lhs.require_same_shape(rhs);
  const auto a = lhs.amplitudes();
  const auto b = rhs.amplitudes();
  Complex sum{};
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::conj(a[i]) * b[i];
  return sum;
}

void apply_diagonal_phase(LatticeState& state, const std::function<double(std::uint64_t)>& phase) {
  auto amps = state.amplitudes();
  for (std::uint64_t X = 0; X < amps.size(); ++X) amps[X] *= std::polar(1.0, phase(X));
}

void apply_diagonal_phase(LatticeState& state, std::span<const double> diagonal, double scale) {
  auto amps = state.amplitudes();
  if (diagonal.size() != amps.size()) throw ShapeError("diagonal length does not match the state dimension");
  for (std::uint64_t X = 0; X < amps.size(); ++X) amps[X] *= std::polar(1.0, scale * diagonal[X]);
}

double diagonal_expectation(const LatticeState& state, std::span<const double> diagonal) {
  const auto amps = state.amplitudes();
  if (diagonal.size() != amps.size()) throw ShapeError("diagonal length does not match the state dimension");
  double sum = 0.0;
  for (std::uint64_t X = 0; X < amps.size(); ++X) sum += std::norm(amps[X]) * diagonal[X];
  return sum;
}

std::vector<double> displacement_expectations(const LatticeState& state, const GridSpec& grid) {
  const auto& layout = state.layout();
  if (layout.bits_per_site != grid.bits_per_site) throw ShapeError("grid bits do not match the state");
  std::vector<double> values(grid.levels());
  for (std::uint64_t x = 0; x < values.size(); ++x) values[x] = position_value(grid, x);

  std::vector<double> out(static_cast<std::size_t>(layout.n_sites), 0.0);
  const auto amps = state.amplitudes();
  for (std::uint64_t X = 0; X < amps.size(); ++X) {
    const double p = std::norm(amps[X]);
    if (p == 0.0) continue;
    for (int j = 0; j < layout.n_sites; ++j) out[j] += p * values[layout.site_value(X, j)];
  }
  return out;
}

double boundary_probability(const LatticeState& state, int cells) {
  const auto& layout = state.layout();
  const auto levels = layout.site_mask() + 1;
  const auto c = static_cast<std::uint64_t>(std::max(cells, 1));
  const auto amps = state.amplitudes();
  double total = 0.0;
  for (std::uint64_t X = 0; X < amps.size(); ++X) {
    const double p = std::norm(amps[X]);
    for (int j = 0; j < layout.n_sites; ++j) {
      const auto x = layout.site_value(X, j);
      if (x < c || x >= levels - c) total += p;
    }
  }
  return total;
}

namespace {

constexpr char kMagic[8] = {'F', 'P', 'U', 'T', 'S', 'T', 'A', 'T'};

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw InputError("truncated checkpoint header");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

void put_f64(std::ostream& out, double d) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(d);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  if (!in) throw InputError("truncated checkpoint payload");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_checkpoint(std::ostream& out, const LatticeState& state) {
  out.write(kMagic, sizeof(kMagic));
  put_u32(out, static_cast<std::uint32_t>(state.layout().n_sites));
  put_u32(out, static_cast<std::uint32_t>(state.layout().bits_per_site));
  for (const auto& a : state.amplitudes()) {
    put_f64(out, a.real());
    put_f64(out, a.imag());
  }
}

LatticeState read_checkpoint(std::istream& in) {
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) throw InputError("not an FPUTSTAT checkpoint");
  const auto n = static_cast<int>(get_u32(in));
  const auto b = static_cast<int>(get_u32(in));
  LatticeState state(SiteLayout{n, b});
  for (auto& a : state.amplitudes()) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    a = {re, im};
  }
  return state;
}

void write_checkpoint(const std::string& path, const LatticeState& state) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path + " for writing");
  write_checkpoint(out, state);
}

LatticeState read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return read_checkpoint(in);
}

}  // namespace fputq
