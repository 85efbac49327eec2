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

#include <string_view>
#include <vector>

#include "fputq/encoding.hpp"
#include "fputq/state.hpp"

namespace fputq {

enum class Quadrature { kCos, kSin };

std::string_view to_string(Quadrature which);

/// Site weights of the cosine and sine standing-wave quadratures of mode k:
/// w_cos[j] = cos(2 pi j k / N) / sqrt(N), w_sin[j] = sin(2 pi j k / N) / sqrt(N).
struct QuadratureWeights {
  int mode_k = 0;
  std::vector<double> w_cos;
  std::vector<double> w_sin;

  const std::vector<double>& select(Quadrature which) const {
    return which == Quadrature::kCos ? w_cos : w_sin;
  }
};

QuadratureWeights weights(int n_sites, int k);

/// Value of sum_j w_j q_j at every grid point (site-major order).
std::vector<double> quadrature_diagonal(const GridSpec& grid, const QuadratureWeights& w, Quadrature which);

/// max over grid points of |sum_j w_j q_j|, via per-site extremes.
double quadrature_max(const GridSpec& grid, const QuadratureWeights& w, Quadrature which);

/// Multiplies amplitude X by exp(i theta sum_j w_j q_j(X)).
void apply_exp_quadrature(LatticeState& state, const GridSpec& grid, const QuadratureWeights& w,
                          Quadrature which, double theta);

/// Multiplies amplitude X by (sum_j w_j q_j(X)) (not unitary; used for oracle expectations).
void apply_quadrature(LatticeState& state, const GridSpec& grid, const QuadratureWeights& w, Quadrature which);

struct RzAngle {
  int site = 0;
  int bit = 0;
  double angle = 0.0;  ///< radians, not reduced mod 2 pi
};

/// Per-qubit rotation angles theta * dq * w_j * bit_weight(r) in site-major, bit-minor order.
std::vector<RzAngle> rz_angles(const GridSpec& grid, const QuadratureWeights& w, Quadrature which, double theta);

/// Constant phase theta * sum_j w_j * offset that completes the per-bit synthesis:
/// offset = -q_max under unsigned-offset, 0 under two's complement.
double rz_global_phase(const GridSpec& grid, const QuadratureWeights& w, Quadrature which, double theta);

/// Diagonal phase generated by the listed rotations, each acting as
/// exp(i angle) on |1> and identity on |0> of its qubit, plus global_phase.
std::vector<double> rz_phase_diagonal(const GridSpec& grid, int n_sites, const std::vector<RzAngle>& angles,
                                      double global_phase);

/// max-entry norm of [Q_cos, Q_sin] from dense matrices. N*b <= 14.
double commutator_norm(int n_sites, int k, const GridSpec& grid);

}  // namespace fputq
