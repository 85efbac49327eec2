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

#include <span>
#include <vector>

namespace fputq {

/// Physical constants of a periodic beta-FPUT chain. Defaults use the unit
/// system hbar = m = a = kappa = 1.
struct ModelParams {
  int n_sites = 4;
  double mass = 1.0;
  double kappa = 1.0;
  double beta = 0.0;
  double lattice_spacing = 1.0;
  double hbar = 1.0;

  /// Throws InputError unless N >= 2, m, a, hbar > 0 and kappa, beta >= 0.
  /// kappa = 0 (free particles) is admitted for operator tests.
  void validate() const;
};

/// Site displacements q_0..q_{N-1}; site N is identified with site 0.
using DisplacementVector = std::vector<double>;

/// omega_k = sqrt((2 kappa / m) (1 - cos(2 pi k / N))).
double dispersion(const ModelParams& params, int k);

/// Largest and mean-nonzero dispersion frequencies over k = 0..N-1. The mean
/// throws InputError when every frequency vanishes (kappa = 0).
double max_frequency(const ModelParams& params);
double mean_nonzero_frequency(const ModelParams& params);

/// Sum over periodic bonds of (kappa/2) d^2 + (beta/4) d^4, d = q_{j+1} - q_j.
double potential_energy(const ModelParams& params, std::span<const double> q);

/// Sum of p_j^2 / (2m).
double kinetic_energy(const ModelParams& params, std::span<const double> p);

}  // namespace fputq
