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

#include <memory>
#include <string_view>
#include <vector>

#include "fputq/dense_oracle.hpp"
#include "fputq/encoding.hpp"
#include "fputq/model.hpp"
#include "fputq/state.hpp"

namespace fputq {

enum class TrotterOrder { kFirst, kSecond, kSuzuki4 };

std::string_view to_string(TrotterOrder order);
TrotterOrder parse_trotter_order(std::string_view text);  // "first" | "second" | "suzuki4" (or 1, 2, 4)

/// Formal accuracy order: 1, 2 or 4.
int accuracy_order(TrotterOrder order);

/// Triple-jump weight s = 1 / (4 - 4^(1/3)) of the five-factor fourth-order composition.
double suzuki4_weight();

struct TrotterPlan {
  TrotterOrder order = TrotterOrder::kSecond;
  double dt = 0.01;
  int n_steps = 1;

  double total_time() const { return dt * n_steps; }
  void validate() const;
};

/// Number of whole steps of size dt in t. Throws InputError if t is not an
/// integer multiple of dt (relative tolerance 1e-9).
int steps_for_duration(double t, double dt);

struct PropagatorOptions {
  /// Negative control for validation: the forward DFT uses the inverse sign, so
  /// the kinetic factor is no longer a unitary conjugation.
  bool inject_dft_sign_fault = false;
  /// Warn on stderr once per evolve() call when grid-edge probability exceeds the threshold.
  bool warn_on_boundary_mass = false;
  double boundary_threshold = 1e-6;
};

/// Split-operator propagator on the full grid: kinetic factors via an N-dimensional
/// DFT (one axis per site register), potential factors as one diagonal phase.
///
/// Instances are safe to share between threads as long as each thread works on
/// its own LatticeState.
class SplitOperator {
 public:
  SplitOperator(const ModelParams& params, const GridSpec& grid, PropagatorOptions options = {});
  ~SplitOperator();
  SplitOperator(SplitOperator&&) noexcept;
  SplitOperator& operator=(SplitOperator&&) noexcept;

  const ModelParams& params() const { return params_; }
  const GridSpec& grid() const { return grid_; }
  const SiteLayout& layout() const { return layout_; }

  /// exp(-i p^2 tau / (2 m hbar)) per site in the momentum basis. The symmetric
  /// half-step is tau = dt / 2.
  void kinetic_step(LatticeState& state, double tau) const;

  /// exp(-i V(q) tau / hbar) in the position basis.
  void potential_step(LatticeState& state, double tau) const;

  void trotter_step(LatticeState& state, double dt, TrotterOrder order) const;
  void evolve(LatticeState& state, const TrotterPlan& plan) const;

  /// n_steps Trotter steps with adjacent kinetic factors fused into one (kinetic
  /// factors commute, so this is the same product with fewer transforms).
  void evolve_fused(LatticeState& state, TrotterOrder order, double dt, int n_steps) const;

  double kinetic_expectation(const LatticeState& state) const;
  double potential_expectation(const LatticeState& state) const;

  std::span<const double> potential_table() const { return potential_; }
  std::span<const double> kinetic_table() const { return kinetic_; }

 private:
  struct Impl;

  void second_order_step(LatticeState& state, double dt) const;
  void check_shape(const LatticeState& state) const;

  ModelParams params_;
  GridSpec grid_;
  SiteLayout layout_;
  PropagatorOptions options_;
  std::vector<double> potential_;  // V(X)
  std::vector<double> kinetic_;    // sum_j p(s_j)^2 / 2m, indexed by the frequency tuple
  std::unique_ptr<Impl> impl_;
};

// Convenience wrappers; each builds a SplitOperator for a single call.
void kinetic_step(LatticeState& state, const ModelParams& params, const GridSpec& grid, double tau);
void potential_step(LatticeState& state, const ModelParams& params, const GridSpec& grid, double tau);
void trotter_step(LatticeState& state, const ModelParams& params, const GridSpec& grid, double dt,
                  TrotterOrder order);
void evolve(LatticeState& state, const TrotterPlan& plan, const ModelParams& params, const GridSpec& grid);

/// Applies exp(-i H t / hbar) from the dense eigendecomposition. N*b <= 14.
void exact_evolve(LatticeState& state, const ModelParams& params, const GridSpec& grid, double t);

/// Something that can carry a state forward in time by t.
class TimeEvolution {
 public:
  virtual ~TimeEvolution() = default;
  virtual void advance(LatticeState& state, double t) const = 0;
  /// Smallest admissible time increment; 0 for continuous-time evolutions.
  virtual double time_step() const = 0;
};

class TrotterEvolution final : public TimeEvolution {
 public:
  TrotterEvolution(std::shared_ptr<const SplitOperator> op, TrotterOrder order, double dt);

  /// Rejects t that is not an integer multiple of dt.
  void advance(LatticeState& state, double t) const override;
  double time_step() const override { return dt_; }

  /// Uses SplitOperator::evolve_fused.
  void advance_steps(LatticeState& state, int n_steps) const;
  const SplitOperator& op() const { return *op_; }
  TrotterOrder order() const { return order_; }

 private:
  std::shared_ptr<const SplitOperator> op_;
  TrotterOrder order_;
  double dt_;
};

class ExactEvolution final : public TimeEvolution {
 public:
  ExactEvolution(const ModelParams& params, const GridSpec& grid);

  void advance(LatticeState& state, double t) const override;
  double time_step() const override { return 0.0; }

  const DenseSpectrum& spectrum() const { return spectrum_; }

 private:
  SiteLayout layout_;
  DenseSpectrum spectrum_;
};

}  // namespace fputq
