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

#include <Eigen/Dense>

#include "fputq/encoding.hpp"
#include "fputq/model.hpp"
#include "fputq/state.hpp"

namespace fputq {

/// Dense matrices are only built for N*b <= 14 (dimension 16384).
inline constexpr int kOracleMaxQubits = 14;

void check_oracle_capacity(const SiteLayout& layout);

/// Per-site unitary DFT F[s][x] = exp(-2 pi i x s / 2^b) / sqrt(2^b).
Eigen::MatrixXcd site_dft_matrix(int bits_per_site);

/// Single-site kinetic matrix F^dagger diag(p_s^2 / 2m) F.
Eigen::MatrixXcd site_kinetic_matrix(const ModelParams& params, const GridSpec& grid);

/// Diagonal of V(q) over all grid points in site-major order.
Eigen::VectorXd potential_diagonal(const ModelParams& params, const GridSpec& grid);

/// H = T + V on the full grid. Throws CapacityError when N*b > 14.
Eigen::MatrixXcd build_dense_hamiltonian(const ModelParams& params, const GridSpec& grid);

/// Permutation mapping site j's register to site j+1 (periodic).
Eigen::MatrixXd translation_operator(const SiteLayout& layout);

Eigen::VectorXcd to_eigen(const LatticeState& state);
LatticeState from_eigen(const SiteLayout& layout, const Eigen::VectorXcd& v);

/// Eigendecomposition of a dense Hamiltonian, reusable across evolution times.
class DenseSpectrum {
 public:
  DenseSpectrum(const ModelParams& params, const GridSpec& grid);
  explicit DenseSpectrum(const Eigen::MatrixXcd& hamiltonian, double hbar = 1.0);

  const Eigen::VectorXd& energies() const { return energies_; }
  const Eigen::MatrixXcd& eigenvectors() const { return vectors_; }
  const Eigen::MatrixXcd& hamiltonian() const { return hamiltonian_; }

  /// exp(-i H t / hbar) v.
  Eigen::VectorXcd evolve(const Eigen::VectorXcd& v, double t) const;

  /// Dense exp(-i H t / hbar).
  Eigen::MatrixXcd propagator(double t) const;

  double expectation(const Eigen::VectorXcd& v) const;

 private:
  Eigen::MatrixXcd hamiltonian_;
  Eigen::VectorXd energies_;
  Eigen::MatrixXcd vectors_;
  double hbar_ = 1.0;
};

}  // namespace fputq
