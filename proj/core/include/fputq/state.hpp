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

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <new>
#include <span>
#include <string>
#include <vector>

#include "fputq/encoding.hpp"
#include "fputq/model.hpp"

namespace fputq {

using Complex = std::complex<double>;

/// Allocator returning 64-byte aligned storage, so SIMD transforms can run in place.
template <typename T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::align_val_t kAlignment{64};

  AlignedAllocator() = default;
  template <typename U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) { return static_cast<T*>(::operator new(n * sizeof(T), kAlignment)); }
  void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, kAlignment); }

  template <typename U>
  friend bool operator==(const AlignedAllocator&, const AlignedAllocator<U>&) noexcept {
    return true;
  }
};

/// Register layout of N sites with b bits each. Global index
/// X = sum_j x_j * 2^(j*b), so site 0 occupies the least significant bits.
struct SiteLayout {
  int n_sites = 0;
  int bits_per_site = 0;

  int total_qubits() const { return n_sites * bits_per_site; }
  std::uint64_t dimension() const { return std::uint64_t{1} << total_qubits(); }
  std::uint64_t site_mask() const { return (std::uint64_t{1} << bits_per_site) - 1; }

  std::uint64_t site_value(std::uint64_t index, int site) const {
    return (index >> (site * bits_per_site)) & site_mask();
  }
  void decode(std::uint64_t index, std::span<std::uint64_t> registers) const;
  std::uint64_t encode(std::span<const std::uint64_t> registers) const;

  friend bool operator==(const SiteLayout&, const SiteLayout&) = default;
};

/// Default statevector ceiling: 2^26 amplitudes (1 GiB of complex doubles).
inline constexpr int kDefaultMaxStateQubits = 26;

/// Throws CapacityError if N*b exceeds max_qubits. Call before allocating.
void check_state_capacity(const SiteLayout& layout, int max_qubits = kDefaultMaxStateQubits);

/// Full lattice wavefunction over N b-bit site registers.
class LatticeState {
 public:
  LatticeState() = default;
  explicit LatticeState(SiteLayout layout, int max_qubits = kDefaultMaxStateQubits);

  static LatticeState basis_state(SiteLayout layout, std::uint64_t index);

  const SiteLayout& layout() const { return layout_; }
  std::uint64_t size() const { return amplitudes_.size(); }

  std::span<Complex> amplitudes() { return amplitudes_; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  Complex& operator[](std::uint64_t i) { return amplitudes_[i]; }
  const Complex& operator[](std::uint64_t i) const { return amplitudes_[i]; }

  double norm() const;
  void normalize();

  /// Throws ShapeError when layouts differ.
  void require_same_shape(const LatticeState& other) const;

 private:
  SiteLayout layout_{};
  std::vector<Complex, AlignedAllocator<Complex>> amplitudes_;
};

/// Normalized product state prod_j exp(-(q_j - c_j)^2 / (4 sigma^2)).
/// With no centers every site is centered on the grid midpoint -dq/2, which makes
/// the per-site distribution exactly mirror-symmetric on the grid.
LatticeState init_product_gaussian(const ModelParams& params, const GridSpec& grid, double width);
LatticeState init_product_gaussian(const ModelParams& params, const GridSpec& grid, double width,
                                   std::span<const double> centers);

/// sigma = sqrt(hbar / (2 m omega_bar)), omega_bar the mean nonzero dispersion frequency.
double default_gaussian_width(const ModelParams& params);

/// Grid midpoint (-q_max + (q_max - dq)) / 2 = -dq/2.
double grid_center(const GridSpec& grid);

Complex inner(const LatticeState& lhs, const LatticeState& rhs);

/// Multiplies amplitude X by exp(i * phase(X)).
void apply_diagonal_phase(LatticeState& state, const std::function<double(std::uint64_t)>& phase);

/// Multiplies amplitude X by exp(i * scale * diagonal[X]).
void apply_diagonal_phase(LatticeState& state, std::span<const double> diagonal, double scale);

/// Expectation value of a real diagonal operator.
double diagonal_expectation(const LatticeState& state, std::span<const double> diagonal);

/// Per-site <q_j>.
std::vector<double> displacement_expectations(const LatticeState& state, const GridSpec& grid);

/// Total probability on grid points within `cells` of either grid edge, summed over sites.
double boundary_probability(const LatticeState& state, int cells = 1);

/// Binary checkpoint: "FPUTSTAT", u32 N, u32 b, then little-endian (re, im) doubles.
void write_checkpoint(std::ostream& out, const LatticeState& state);
LatticeState read_checkpoint(std::istream& in);
void write_checkpoint(const std::string& path, const LatticeState& state);
LatticeState read_checkpoint(const std::string& path);

}  // namespace fputq
