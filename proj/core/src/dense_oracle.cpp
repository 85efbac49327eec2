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

#include "fputq/dense_oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fputq/errors.hpp"

namespace fputq {

void check_oracle_capacity(const SiteLayout& layout) {
  if (layout.total_qubits() > kOracleMaxQubits) {
    throw CapacityError("dense oracle limited to N*b <= " + std::to_string(kOracleMaxQubits) + ", got " +
                        std::to_string(layout.total_qubits()));
  }
}

Eigen::MatrixXcd site_dft_matrix(int bits_per_site) {
  const Eigen::Index L = Eigen::Index{1} << bits_per_site;
  const double norm = 1.0 / std::sqrt(static_cast<double>(L));
  Eigen::MatrixXcd f(L, L);
  for (Eigen::Index s = 0; s < L; ++s) {
    for (Eigen::Index x = 0; x < L; ++x) {
      // Reduce x*s mod L first so the angle stays exact for large registers.
      const auto m = static_cast<double>((x * s) % L);
      f(s, x) = std::polar(norm, -2.0 * std::numbers::pi * m / static_cast<double>(L));
    }
  }
  return f;
}

Eigen::MatrixXcd site_kinetic_matrix(const ModelParams& params, const GridSpec& grid) {
  const Eigen::MatrixXcd f = site_dft_matrix(grid.bits_per_site);
  Eigen::VectorXd e(f.rows());
  for (Eigen::Index s = 0; s < e.size(); ++s) {
    const double p = momentum_value(grid, static_cast<std::uint64_t>(s), params.hbar);
    e(s) = p * p / (2.0 * params.mass);
  }
  return f.adjoint() * e.asDiagonal() * f;
}

Eigen::VectorXd potential_diagonal(const ModelParams& params, const GridSpec& grid) {
  const SiteLayout layout{params.n_sites, grid.bits_per_site};
  const auto dim = layout.dimension();
  Eigen::VectorXd v(static_cast<Eigen::Index>(dim));
  std::vector<double> q(static_cast<std::size_t>(params.n_sites));
  for (std::uint64_t X = 0; X < dim; ++X) {
    for (int j = 0; j < params.n_sites; ++j) q[j] = position_value(grid, layout.site_value(X, j));
    v(static_cast<Eigen::Index>(X)) = potential_energy(params, q);
  }
  return v;
}

Eigen::MatrixXcd build_dense_hamiltonian(const ModelParams& params, const GridSpec& grid) {
  params.validate();
  grid.validate();
  const SiteLayout layout{params.n_sites, grid.bits_per_site};
  check_oracle_capacity(layout);

  const auto dim = static_cast<Eigen::Index>(layout.dimension());
  const Eigen::MatrixXcd t_site = site_kinetic_matrix(params, grid);
  const auto levels = static_cast<std::uint64_t>(t_site.rows());

  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  h.diagonal() = potential_diagonal(params, grid).cast<Complex>();

  for (std::uint64_t X = 0; X < layout.dimension(); ++X) {
    for (int j = 0; j < layout.n_sites; ++j) {
      const int shift = j * layout.bits_per_site;
      const std::uint64_t x = layout.site_value(X, j);
      const std::uint64_t rest = X & ~(layout.site_mask() << shift);
      for (std::uint64_t y = 0; y < levels; ++y) {
        const std::uint64_t Y = rest | (y << shift);
        h(static_cast<Eigen::Index>(Y), static_cast<Eigen::Index>(X)) +=
            t_site(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x));
      }
    }
  }
  return h;
}

Eigen::MatrixXd translation_operator(const SiteLayout& layout) {
  check_oracle_capacity(layout);
  const auto dim = static_cast<Eigen::Index>(layout.dimension());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim, dim);
  std::vector<std::uint64_t> regs(static_cast<std::size_t>(layout.n_sites));
  std::vector<std::uint64_t> shifted(regs.size());
  for (std::uint64_t X = 0; X < layout.dimension(); ++X) {
    layout.decode(X, regs);
    for (std::size_t j = 0; j < regs.size(); ++j) shifted[(j + 1) % regs.size()] = regs[j];
    p(static_cast<Eigen::Index>(layout.encode(shifted)), static_cast<Eigen::Index>(X)) = 1.0;
  }
  return p;
}

Eigen::VectorXcd to_eigen(const LatticeState& state) {
  const auto amps = state.amplitudes();
  return Eigen::Map<const Eigen::VectorXcd>(amps.data(), static_cast<Eigen::Index>(amps.size()));
}

LatticeState from_eigen(const SiteLayout& layout, const Eigen::VectorXcd& v) {
  LatticeState s(layout);
  if (static_cast<std::uint64_t>(v.size()) != s.size()) throw ShapeError("vector length does not match layout");
  auto amps = s.amplitudes();
  for (Eigen::Index i = 0; i < v.size(); ++i) amps[static_cast<std::size_t>(i)] = v(i);
  return s;
}

DenseSpectrum::DenseSpectrum(const ModelParams& params, const GridSpec& grid)
    : DenseSpectrum(build_dense_hamiltonian(params, grid), params.hbar) {}

DenseSpectrum::DenseSpectrum(const Eigen::MatrixXcd& hamiltonian, double hbar)
    : hamiltonian_(hamiltonian), hbar_(hbar) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian_);
  if (solver.info() != Eigen::Success) throw InputError("dense eigendecomposition failed");
  energies_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

Eigen::VectorXcd DenseSpectrum::evolve(const Eigen::VectorXcd& v, double t) const {
  Eigen::VectorXcd c = vectors_.adjoint() * v;
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) *= std::polar(1.0, -energies_(i) * t / hbar_);
  return vectors_ * c;
}

Eigen::MatrixXcd DenseSpectrum::propagator(double t) const {
  Eigen::VectorXcd phases(energies_.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases(i) = std::polar(1.0, -energies_(i) * t / hbar_);
  return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

double DenseSpectrum::expectation(const Eigen::VectorXcd& v) const {
  return (v.adjoint() * hamiltonian_ * v)(0, 0).real();
}

}  // namespace fputq
