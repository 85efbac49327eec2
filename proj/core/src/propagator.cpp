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

#include "fputq/propagator.hpp"

#include <fftw3.h>

#include <cmath>
#include <iostream>
#include <map>
#include <mutex>
#include <string>

#include "fputq/errors.hpp"

namespace fputq {

std::string_view to_string(TrotterOrder order) {
  switch (order) {
    case TrotterOrder::kFirst: return "first";
    case TrotterOrder::kSecond: return "second";
    case TrotterOrder::kSuzuki4: return "suzuki4";
  }
  return "?";
}

TrotterOrder parse_trotter_order(std::string_view text) {
  if (text == "first" || text == "1") return TrotterOrder::kFirst;
  if (text == "second" || text == "2") return TrotterOrder::kSecond;
  if (text == "suzuki4" || text == "fourth" || text == "4") return TrotterOrder::kSuzuki4;
  throw InputError("unknown Trotter order '" + std::string(text) + "' (expected first, second or suzuki4)");
}

int accuracy_order(TrotterOrder order) {
  switch (order) {
    case TrotterOrder::kFirst: return 1;
    case TrotterOrder::kSecond: return 2;
    case TrotterOrder::kSuzuki4: return 4;
  }
  return 0;
}

double suzuki4_weight() { return 1.0 / (4.0 - std::cbrt(4.0)); }

void TrotterPlan::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InputError("trotter.dt must be positive");
  if (n_steps < 1) throw InputError("trotter.steps must be >= 1");
}

int steps_for_duration(double t, double dt) {
  if (!(dt > 0.0)) throw InputError("time step must be positive");
  if (t < 0.0) throw InputError("time lag " + std::to_string(t) + " is negative");
  const double ratio = t / dt;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    throw InputError("time lag " + std::to_string(t) + " is not an integer multiple of dt = " + std::to_string(dt));
  }
  return static_cast<int>(rounded);
}

namespace {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

constexpr std::size_t kPhaseCacheEntries = 8;

}  // namespace

struct SplitOperator::Impl {
  // Aligned plans for LatticeState storage, unaligned fallbacks for anything else.
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  fftw_plan forward_unaligned = nullptr;
  fftw_plan backward_unaligned = nullptr;
  int alignment = 0;

  mutable std::mutex cache_mutex;
  mutable std::map<double, std::shared_ptr<const std::vector<Complex>>> kinetic_cache;
  mutable std::map<double, std::shared_ptr<const std::vector<Complex>>> potential_cache;

  ~Impl() {
    std::lock_guard lock(fftw_planner_mutex());
    for (auto* p : {forward, backward, forward_unaligned, backward_unaligned}) {
      if (p) fftw_destroy_plan(p);
    }
  }

  static std::shared_ptr<const std::vector<Complex>> cached_phases(
      std::mutex& m, std::map<double, std::shared_ptr<const std::vector<Complex>>>& cache, double key,
      const std::vector<double>& table, double scale, double amplitude) {
    {
      std::lock_guard lock(m);
      if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto phases = std::make_shared<std::vector<Complex>>(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) (*phases)[i] = std::polar(amplitude, scale * table[i]);
    std::lock_guard lock(m);
    if (cache.size() >= kPhaseCacheEntries) cache.clear();
    cache.emplace(key, phases);
    return phases;
  }
};

SplitOperator::SplitOperator(const ModelParams& params, const GridSpec& grid, PropagatorOptions options)
    : params_(params), grid_(grid), layout_{params.n_sites, grid.bits_per_site}, options_(options) {
  params_.validate();
  grid_.validate();
  check_state_capacity(layout_);

  const auto dim = layout_.dimension();
  const auto levels = grid_.levels();
  const int n = layout_.n_sites;

  std::vector<double> site_values(levels);
  std::vector<double> site_kinetic(levels);
  for (std::uint64_t x = 0; x < levels; ++x) {
    site_values[x] = position_value(grid_, x);
    const double p = momentum_value(grid_, x, params_.hbar);
    site_kinetic[x] = p * p / (2.0 * params_.mass);
  }

  potential_.resize(dim);
  kinetic_.resize(dim);
  std::vector<double> q(static_cast<std::size_t>(n));
  for (std::uint64_t X = 0; X < dim; ++X) {
    double k = 0.0;
    for (int j = 0; j < n; ++j) {
      const auto x = layout_.site_value(X, j);
      q[j] = site_values[x];
      k += site_kinetic[x];
    }
    potential_[X] = potential_energy(params_, q);
    kinetic_[X] = k;
  }

  impl_ = std::make_unique<Impl>();
  std::vector<int> dims(static_cast<std::size_t>(n), static_cast<int>(levels));
  // FFTW_ESTIMATE keeps the chosen algorithm, and hence the rounding, identical across runs.
  std::vector<Complex, AlignedAllocator<Complex>> scratch(dim);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  const int forward_sign = options_.inject_dft_sign_fault ? FFTW_BACKWARD : FFTW_FORWARD;
  std::lock_guard lock(fftw_planner_mutex());
  impl_->alignment = fftw_alignment_of(reinterpret_cast<double*>(buf));
  impl_->forward = fftw_plan_dft(n, dims.data(), buf, buf, forward_sign, FFTW_ESTIMATE);
  impl_->backward = fftw_plan_dft(n, dims.data(), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  impl_->forward_unaligned = fftw_plan_dft(n, dims.data(), buf, buf, forward_sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  impl_->backward_unaligned = fftw_plan_dft(n, dims.data(), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!impl_->forward || !impl_->backward || !impl_->forward_unaligned || !impl_->backward_unaligned) {
    throw InputError("FFTW planning failed");
  }
}

SplitOperator::~SplitOperator() = default;
SplitOperator::SplitOperator(SplitOperator&&) noexcept = default;
SplitOperator& SplitOperator::operator=(SplitOperator&&) noexcept = default;

void SplitOperator::check_shape(const LatticeState& state) const {
  if (state.layout() != layout_) {
    throw ShapeError("state layout (N=" + std::to_string(state.layout().n_sites) + ", b=" +
                     std::to_string(state.layout().bits_per_site) + ") does not match the propagator (N=" +
                     std::to_string(layout_.n_sites) + ", b=" + std::to_string(layout_.bits_per_site) + ")");
  }
}

void SplitOperator::kinetic_step(LatticeState& state, double tau) const {
  check_shape(state);
  if (tau == 0.0) return;
  auto amps = state.amplitudes();
  auto* buf = reinterpret_cast<fftw_complex*>(amps.data());
  // FFTW transforms are unnormalized; 1/D is folded into the phase table.
  const double inv_dim = 1.0 / static_cast<double>(amps.size());
  const auto phases = Impl::cached_phases(impl_->cache_mutex, impl_->kinetic_cache, tau, kinetic_,
                                          -tau / params_.hbar, inv_dim);
  const bool aligned = fftw_alignment_of(reinterpret_cast<double*>(buf)) == impl_->alignment;
  fftw_execute_dft(aligned ? impl_->forward : impl_->forward_unaligned, buf, buf);
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] *= (*phases)[i];
  fftw_execute_dft(aligned ? impl_->backward : impl_->backward_unaligned, buf, buf);
}

void SplitOperator::potential_step(LatticeState& state, double tau) const {
  check_shape(state);
  if (tau == 0.0) return;
  const auto phases = Impl::cached_phases(impl_->cache_mutex, impl_->potential_cache, tau, potential_,
                                          -tau / params_.hbar, 1.0);
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] *= (*phases)[i];
}

void SplitOperator::second_order_step(LatticeState& state, double dt) const {
  kinetic_step(state, 0.5 * dt);
  potential_step(state, dt);
  kinetic_step(state, 0.5 * dt);
}

void SplitOperator::trotter_step(LatticeState& state, double dt, TrotterOrder order) const {
  switch (order) {
    case TrotterOrder::kFirst:
      kinetic_step(state, dt);
      potential_step(state, dt);
      return;
    case TrotterOrder::kSecond:
      second_order_step(state, dt);
      return;
    case TrotterOrder::kSuzuki4: {
      const double s = suzuki4_weight();
      second_order_step(state, s * dt);
      second_order_step(state, s * dt);
      second_order_step(state, (1.0 - 4.0 * s) * dt);
      second_order_step(state, s * dt);
      second_order_step(state, s * dt);
      return;
    }
  }
  throw InputError("unknown Trotter order");
}

void SplitOperator::evolve(LatticeState& state, const TrotterPlan& plan) const {
  plan.validate();
  for (int i = 0; i < plan.n_steps; ++i) trotter_step(state, plan.dt, plan.order);
  if (options_.warn_on_boundary_mass) {
    const double edge = boundary_probability(state);
    if (edge > options_.boundary_threshold) {
      std::cerr << "warning: grid-edge probability " << edge << " exceeds " << options_.boundary_threshold
                << "; increase grid.q_max to suppress wrap-around\n";
    }
  }
}

void SplitOperator::evolve_fused(LatticeState& state, TrotterOrder order, double dt, int n_steps) const {
  if (n_steps <= 0) return;
  // Per-step factor list as (is_kinetic, tau); adjacent kinetic factors are summed.
  std::vector<std::pair<bool, double>> step;
  auto second = [&](double h) {
    step.emplace_back(true, 0.5 * h);
    step.emplace_back(false, h);
    step.emplace_back(true, 0.5 * h);
  };
  switch (order) {
    case TrotterOrder::kFirst:
      step = {{true, dt}, {false, dt}};
      break;
    case TrotterOrder::kSecond:
      second(dt);
      break;
    case TrotterOrder::kSuzuki4: {
      const double s = suzuki4_weight();
      for (double f : {s, s, 1.0 - 4.0 * s, s, s}) second(f * dt);
      break;
    }
  }
  double pending = 0.0;
  for (int i = 0; i < n_steps; ++i) {
    for (const auto& [kinetic, tau] : step) {
      if (kinetic) {
        pending += tau;
        continue;
      }
      kinetic_step(state, pending);
      pending = 0.0;
      potential_step(state, tau);
    }
  }
  kinetic_step(state, pending);
}

double SplitOperator::kinetic_expectation(const LatticeState& state) const {
  check_shape(state);
  std::vector<Complex, AlignedAllocator<Complex>> work(state.amplitudes().begin(), state.amplitudes().end());
  auto* buf = reinterpret_cast<fftw_complex*>(work.data());
  const bool aligned = fftw_alignment_of(reinterpret_cast<double*>(buf)) == impl_->alignment;
  fftw_execute_dft(aligned ? impl_->forward : impl_->forward_unaligned, buf, buf);
  double sum = 0.0;
  for (std::size_t i = 0; i < work.size(); ++i) sum += std::norm(work[i]) * kinetic_[i];
  return sum / static_cast<double>(work.size());
}

double SplitOperator::potential_expectation(const LatticeState& state) const {
  check_shape(state);
  return diagonal_expectation(state, potential_);
}

void kinetic_step(LatticeState& state, const ModelParams& params, const GridSpec& grid, double tau) {
  SplitOperator(params, grid).kinetic_step(state, tau);
}

void potential_step(LatticeState& state, const ModelParams& params, const GridSpec& grid, double tau) {
  SplitOperator(params, grid).potential_step(state, tau);
}

void trotter_step(LatticeState& state, const ModelParams& params, const GridSpec& grid, double dt,
                  TrotterOrder order) {
  SplitOperator(params, grid).trotter_step(state, dt, order);
}

void evolve(LatticeState& state, const TrotterPlan& plan, const ModelParams& params, const GridSpec& grid) {
  SplitOperator(params, grid).evolve(state, plan);
}

void exact_evolve(LatticeState& state, const ModelParams& params, const GridSpec& grid, double t) {
  ExactEvolution(params, grid).advance(state, t);
}

TrotterEvolution::TrotterEvolution(std::shared_ptr<const SplitOperator> op, TrotterOrder order, double dt)
    : op_(std::move(op)), order_(order), dt_(dt) {
  if (!op_) throw InputError("TrotterEvolution needs a propagator");
  if (!(dt_ > 0.0)) throw InputError("trotter.dt must be positive");
}

void TrotterEvolution::advance(LatticeState& state, double t) const {
  advance_steps(state, steps_for_duration(t, dt_));
}

void TrotterEvolution::advance_steps(LatticeState& state, int n_steps) const {
  op_->evolve_fused(state, order_, dt_, n_steps);
}

ExactEvolution::ExactEvolution(const ModelParams& params, const GridSpec& grid)
    : layout_{params.n_sites, grid.bits_per_site}, spectrum_(params, grid) {}

void ExactEvolution::advance(LatticeState& state, double t) const {
  if (state.layout() != layout_) throw ShapeError("state layout does not match the dense oracle");
  if (t == 0.0) return;
  const Eigen::VectorXcd out = spectrum_.evolve(to_eigen(state), t);
  auto amps = state.amplitudes();
  for (Eigen::Index i = 0; i < out.size(); ++i) amps[static_cast<std::size_t>(i)] = out(i);
}

}  // namespace fputq
