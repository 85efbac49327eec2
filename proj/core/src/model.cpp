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

#include "fputq/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fputq/errors.hpp"

namespace fputq {

void ModelParams::validate() const {
  if (n_sites < 2) throw InputError("model.n_sites must be >= 2, got " + std::to_string(n_sites));
  if (!(mass > 0.0)) throw InputError("model.mass must be positive");
  if (!(kappa >= 0.0)) throw InputError("model.kappa must be non-negative");
  if (!(lattice_spacing > 0.0)) throw InputError("model.lattice_spacing must be positive");
  if (!(hbar > 0.0)) throw InputError("model.hbar must be positive");
  if (!(beta >= 0.0)) throw InputError("model.beta must be non-negative");
}

double dispersion(const ModelParams& params, int k) {
  if (k < 0 || k >= params.n_sites) {
    throw InputError("mode index " + std::to_string(k) + " outside [0, " + std::to_string(params.n_sites) + ")");
  }
  const double ka = 2.0 * std::numbers::pi * k / params.n_sites;
  // 1 - cos(x) = 2 sin^2(x/2) avoids cancellation near k = 0.
  const double s = std::sin(0.5 * ka);
  return std::sqrt((2.0 * params.kappa / params.mass) * 2.0 * s * s);
}

double max_frequency(const ModelParams& params) {
  double best = 0.0;
  for (int k = 0; k < params.n_sites; ++k) best = std::max(best, dispersion(params, k));
  return best;
}

double mean_nonzero_frequency(const ModelParams& params) {
  double sum = 0.0;
  int count = 0;
  for (int k = 1; k < params.n_sites; ++k) {
    sum += dispersion(params, k);
    ++count;
  }
  if (!(sum > 0.0)) throw InputError("mean_nonzero_frequency needs kappa > 0");
  return sum / count;
}

double potential_energy(const ModelParams& params, std::span<const double> q) {
  const auto n = q.size();
  if (n != static_cast<std::size_t>(params.n_sites)) {
    throw ShapeError("displacement vector has " + std::to_string(n) + " entries, expected " +
                     std::to_string(params.n_sites));
  }
  double energy = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double d = q[(j + 1) % n] - q[j];
    const double d2 = d * d;
    energy += 0.5 * params.kappa * d2 + 0.25 * params.beta * d2 * d2;
  }
  return energy;
}

double kinetic_energy(const ModelParams& params, std::span<const double> p) {
  if (p.size() != static_cast<std::size_t>(params.n_sites)) {
    throw ShapeError("momentum vector has " + std::to_string(p.size()) + " entries, expected " +
                     std::to_string(params.n_sites));
  }
  double energy = 0.0;
  for (double pj : p) energy += pj * pj;
  return energy / (2.0 * params.mass);
}

}  // namespace fputq
