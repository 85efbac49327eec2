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

#include "fputq/quadratures.hpp"

#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fputq/dense_oracle.hpp"
#include "fputq/errors.hpp"

namespace fputq {

std::string_view to_string(Quadrature which) { return which == Quadrature::kCos ? "cos" : "sin"; }

QuadratureWeights weights(int n_sites, int k) {
  if (n_sites < 1) throw InputError("site count must be positive");
  if (k < 0 || k >= n_sites) {
    throw InputError("mode index " + std::to_string(k) + " outside [0, " + std::to_string(n_sites) + ")");
  }
  QuadratureWeights w;
  w.mode_k = k;
  w.w_cos.resize(static_cast<std::size_t>(n_sites));
  w.w_sin.resize(static_cast<std::size_t>(n_sites));
  const double norm = 1.0 / std::sqrt(static_cast<double>(n_sites));
  for (int j = 0; j < n_sites; ++j) {
    // Reduce j*k mod N so that symmetric entries come out bit-identical.
    const int m = (j * k) % n_sites;
    if (m == 0) {
      w.w_cos[j] = norm;
      w.w_sin[j] = 0.0;
      continue;
    }
    const double angle = 2.0 * std::numbers::pi * m / n_sites;
    w.w_cos[j] = std::cos(angle) * norm;
    w.w_sin[j] = std::sin(angle) * norm;
  }
  return w;
}

namespace {

void check_weights(const GridSpec& grid, const QuadratureWeights& w) {
  grid.validate();
  if (w.w_cos.size() != w.w_sin.size() || w.w_cos.empty()) throw ShapeError("malformed quadrature weights");
}

/// Per-site contribution tables w_j * q(x).
std::vector<std::vector<double>> site_tables(const GridSpec& grid, const std::vector<double>& site_weights) {
  std::vector<std::vector<double>> tables(site_weights.size(), std::vector<double>(grid.levels()));
  for (std::size_t j = 0; j < site_weights.size(); ++j) {
    for (std::uint64_t x = 0; x < grid.levels(); ++x) tables[j][x] = site_weights[j] * position_value(grid, x);
  }
  return tables;
}

}  // namespace

std::vector<double> quadrature_diagonal(const GridSpec& grid, const QuadratureWeights& w, Quadrature which) {
  check_weights(grid, w);
  const auto& sw = w.select(which);
  const SiteLayout layout{static_cast<int>(sw.size()), grid.bits_per_site};
  check_state_capacity(layout);
  const auto tables = site_tables(grid, sw);
  std::vector<double> diag(layout.dimension());
  for (std::uint64_t X = 0; X < diag.size(); ++X) {
    double v = 0.0;
    for (int j = 0; j < layout.n_sites; ++j) v += tables[j][layout.site_value(X, j)];
    diag[X] = v;
  }
  return diag;
}

double quadrature_max(const GridSpec& grid, const QuadratureWeights& w, Quadrature which) {
  check_weights(grid, w);
  // Both encodings cover [-q_max, q_max - dq].
  const double lo = -grid.q_max;
  const double hi = grid.q_max - grid.spacing();
  double max_sum = 0.0;
  double min_sum = 0.0;
  for (double wj : w.select(which)) {
    max_sum += std::max(wj * lo, wj * hi);
    min_sum += std::min(wj * lo, wj * hi);
  }
  return std::max(std::abs(max_sum), std::abs(min_sum));
}

void apply_exp_quadrature(LatticeState& state, const GridSpec& grid, const QuadratureWeights& w, Quadrature which,
                          double theta) {
  if (state.layout().n_sites != static_cast<int>(w.w_cos.size()) ||
      state.layout().bits_per_site != grid.bits_per_site) {
    throw ShapeError("quadrature weights or grid do not match the state");
  }
  if (theta == 0.0) return;
  apply_diagonal_phase(state, quadrature_diagonal(grid, w, which), theta);
}

void apply_quadrature(LatticeState& state, const GridSpec& grid, const QuadratureWeights& w, Quadrature which) {
  if (state.layout().n_sites != static_cast<int>(w.w_cos.size()) ||
      state.layout().bits_per_site != grid.bits_per_site) {
    throw ShapeError("quadrature weights or grid do not match the state");
  }
  const auto diag = quadrature_diagonal(grid, w, which);
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] *= diag[i];
}

std::vector<RzAngle> rz_angles(const GridSpec& grid, const QuadratureWeights& w, Quadrature which, double theta) {
  check_weights(grid, w);
  const auto& sw = w.select(which);
  const double dq = grid.spacing();
  std::vector<RzAngle> out;
  out.reserve(sw.size() * static_cast<std::size_t>(grid.bits_per_site));
  for (std::size_t j = 0; j < sw.size(); ++j) {
    for (int r = 0; r < grid.bits_per_site; ++r) {
      out.push_back({static_cast<int>(j), r, theta * dq * sw[j] * static_cast<double>(bit_weight(grid, r))});
    }
  }
  return out;
}

double rz_global_phase(const GridSpec& grid, const QuadratureWeights& w, Quadrature which, double theta) {
  check_weights(grid, w);
  if (grid.encoding == EncodingKind::kTwosComplement) return 0.0;
  double sum = 0.0;
  for (double wj : w.select(which)) sum += wj;
  return theta * sum * (-grid.q_max);
}

std::vector<double> rz_phase_diagonal(const GridSpec& grid, int n_sites, const std::vector<RzAngle>& angles,
                                      double global_phase) {
  const SiteLayout layout{n_sites, grid.bits_per_site};
  check_state_capacity(layout);
  std::vector<double> diag(layout.dimension(), global_phase);
  for (std::uint64_t X = 0; X < diag.size(); ++X) {
    for (const auto& a : angles) {
      const int qubit = a.site * grid.bits_per_site + a.bit;
      const bool one = ((X >> qubit) & 1u) != 0;
      // Rz(phi) = diag(exp(-i phi/2), exp(+i phi/2)).
      diag[X] += one ? 0.5 * a.angle : -0.5 * a.angle;
    }
  }
  return diag;
}

double commutator_norm(int n_sites, int k, const GridSpec& grid) {
  grid.validate();
  const SiteLayout layout{n_sites, grid.bits_per_site};
  check_oracle_capacity(layout);
  const auto w = weights(n_sites, k);
  const auto dim = static_cast<Eigen::Index>(layout.dimension());

  // Sum over sites of w_j * (I x ... x diag(q) x ... x I), assembled entry by entry.
  auto build = [&](const std::vector<double>& sw) {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(dim) * sw.size());
    for (int j = 0; j < n_sites; ++j) {
      for (Eigen::Index X = 0; X < dim; ++X) {
        const double q = position_value(grid, layout.site_value(static_cast<std::uint64_t>(X), j));
        triplets.emplace_back(X, X, sw[j] * q);
      }
    }
    Eigen::SparseMatrix<double> m(dim, dim);
    m.setFromTriplets(triplets.begin(), triplets.end());
    return m;
  };
  const Eigen::SparseMatrix<double> a = build(w.w_cos);
  const Eigen::SparseMatrix<double> b = build(w.w_sin);
  const Eigen::SparseMatrix<double> c = Eigen::SparseMatrix<double>(a * b) - Eigen::SparseMatrix<double>(b * a);
  double norm = 0.0;
  for (Eigen::Index col = 0; col < c.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(c, col); it; ++it) norm = std::max(norm, std::abs(it.value()));
  }
  return norm;
}

}  // namespace fputq
