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

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "fputq/propagator.hpp"
#include "fputq/quadratures.hpp"
#include "fputq/state.hpp"

namespace fputq {

/// Which quadrature sits at time t (first letter) and at time 0 (second letter).
enum class CorrelatorKind { kCC, kSS, kCS, kSC };

inline constexpr std::array<CorrelatorKind, 4> kAllCorrelatorKinds = {
    CorrelatorKind::kCC, CorrelatorKind::kSS, CorrelatorKind::kCS, CorrelatorKind::kSC};

std::string_view to_string(CorrelatorKind kind);
Quadrature later_quadrature(CorrelatorKind kind);
Quadrature earlier_quadrature(CorrelatorKind kind);

struct GeneratingPoint {
  CorrelatorKind kind = CorrelatorKind::kCC;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double time_lag = 0.0;
  Complex value{};
  std::optional<int> shots;
  std::optional<std::uint64_t> seed;
};

enum class EstimatorKind { kRect, kCentral, kRichardson };

std::string_view to_string(EstimatorKind kind);
EstimatorKind parse_estimator(std::string_view text);

struct CorrelatorEstimate {
  double time_lag = 0.0;
  Complex value{};
  EstimatorKind estimator = EstimatorKind::kRect;
  double h = 0.0;
  double bias_bound = 0.0;
};

/// F(theta1, theta2) at a fixed time lag.
using GeneratingEvaluator = std::function<Complex(double theta1, double theta2)>;

/// A finite-difference estimator is a weighted sum of generating values.
struct StencilPoint {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double weight = 0.0;
};

/// Stencil of the estimator with repeated points merged. Throws InputError for h <= 0.
std::vector<StencilPoint> stencil(EstimatorKind kind, double h);

/// h * q_max^3 for rect, h^2 * q_max^4 otherwise.
double bias_bound(EstimatorKind kind, double h, double q_max);

/// -[F(h,h) - F(h,0) - F(0,h) + F(0,0)] / h^2.
CorrelatorEstimate rect_estimator(const GeneratingEvaluator& f, double t, double h, double q_max);

/// -[F(h,h) - F(h,-h) - F(-h,h) + F(-h,-h)] / (4 h^2).
CorrelatorEstimate central_estimator(const GeneratingEvaluator& f, double t, double h, double q_max);

/// 2 rect(h/2) - rect(h).
CorrelatorEstimate richardson_estimator(const GeneratingEvaluator& f, double t, double h, double q_max);

CorrelatorEstimate estimate(EstimatorKind kind, const GeneratingEvaluator& f, double t, double h, double q_max);

/// <Q_k(t) Q_k(0)> = (cc - ss) - i (cs + sc).
Complex reconstruct_correlator(Complex cc, Complex ss, Complex cs, Complex sc);

/// Hadamard-test emulation: M ancilla outcomes for Re and M for Im, from two
/// independent streams derived from seed. Returns (2 p_re - 1) + i (2 p_im - 1).
Complex shot_sample(Complex value, int shots, std::uint64_t seed);

/// Seed for stream `stream` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Standard-error scale 2 / (h^2 sqrt(M)) of the four-point rectangle estimator.
double stat_error_model(double h, int shots);

/// Circuit executions 4 * N_tau * M.
std::uint64_t execution_count(std::uint64_t n_times, std::uint64_t shots);

/// <psi0| U^dag(t) exp(i theta1 Q_x) U(t) exp(i theta2 Q_y) |psi0>, evaluated as
/// inner(U psi0, exp(i theta1 Q_x) U exp(i theta2 Q_y) psi0).
Complex generating_value(CorrelatorKind kind, double theta1, double theta2, double t, const LatticeState& psi0,
                         const TimeEvolution& evolution, const GridSpec& grid, const QuadratureWeights& w);

/// Direct two-time quadrature correlator <Q_x(t) Q_y(0)> with the same evolution,
/// applying the quadratures as multiplication operators. Reference for estimator bias.
Complex quadrature_correlator(CorrelatorKind kind, double t, const LatticeState& psi0, const TimeEvolution& evolution,
                              const GridSpec& grid, const QuadratureWeights& w);

struct SeriesOptions {
  std::vector<double> times;  ///< must be non-decreasing
  std::vector<EstimatorKind> estimators = {EstimatorKind::kRichardson};
  double h = 0.05;
  std::optional<int> shots;  ///< sample generating values when set
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct SeriesPoint {
  double time_lag = 0.0;
  EstimatorKind estimator = EstimatorKind::kRect;
  std::array<CorrelatorEstimate, 4> parts{};  ///< indexed like kAllCorrelatorKinds
  CorrelatorEstimate correlator{};            ///< reconstructed; bias_bound sums the parts
};

/// Evaluates all four generating functions on a grid of time lags by advancing a
/// small set of states incrementally, then applies the requested estimators.
class CorrelatorSeries {
 public:
  CorrelatorSeries(const TimeEvolution& evolution, const GridSpec& grid, QuadratureWeights w, LatticeState psi0);

  std::vector<SeriesPoint> run(const SeriesOptions& options) const;

  /// max(Q_max(cos), Q_max(sin)) used for bias bounds.
  double q_max() const { return q_max_; }

 private:
  const TimeEvolution& evolution_;
  GridSpec grid_;
  QuadratureWeights weights_;
  LatticeState psi0_;
  double q_max_ = 0.0;
};

}  // namespace fputq
