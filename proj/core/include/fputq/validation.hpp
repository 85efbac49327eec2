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
#include <span>
#include <string>
#include <vector>

#include "fputq/config.hpp"
#include "fputq/correlator.hpp"
#include "fputq/propagator.hpp"
#include "fputq/quadratures.hpp"
#include "fputq/state.hpp"

namespace fputq {

/// Least-squares slope of y against x. Throws InputError for fewer than two points.
double fit_slope(std::span<const double> x, std::span<const double> y);

/// Slope of log y against log x; every value must be positive.
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Angular frequency from the sign changes of a sampled signal: crossings are located
/// by linear interpolation and their times fitted as t_n = t_0 + n pi / omega.
/// Throws InputError when fewer than two crossings are found.
double zero_crossing_frequency(std::span<const double> times, std::span<const double> values);

/// Trotter error ||psi_trotter(t) - psi_exact(t)|| for a sequence of step sizes.
struct OrderStudy {
  TrotterOrder order = TrotterOrder::kSecond;
  std::vector<double> dts;
  std::vector<double> errors;
  double slope = 0.0;
};

OrderStudy trotter_order_study(const ModelParams& params, const GridSpec& grid, const LatticeState& psi0,
                               TrotterOrder order, double t, const std::vector<double>& dts,
                               const PropagatorOptions& options = {});

/// Oracle-scale anharmonic chain used for the Trotter order study: N = 2, b = 3,
/// beta = 1, q_max = 1.6, Gaussian width 0.7. Its grid spectrum spans about 80, so
/// the step sizes 0.2 .. 0.025 sit at the edge of the asymptotic regime.
struct TrotterCase {
  ModelParams params;
  GridSpec grid;
  LatticeState psi0;
};

TrotterCase trotter_case();

/// A small harmonic chain prepared in a displaced Gaussian, used to measure estimator bias.
struct HarmonicCase {
  ModelParams params;
  GridSpec grid;
  QuadratureWeights weights;
  LatticeState psi0;
};

/// beta = 0 chain of n_sites with mode k displaced by `displacement` and Gaussian width `width`.
HarmonicCase harmonic_case(int n_sites, int bits, int k, double q_max, double width, double displacement);

/// Default: N = 2, b = 4, k = 1, q_max = 4, width 0.6, displacement 0.8.
HarmonicCase default_harmonic_case();

/// Exact reconstructed correlator via multiplication operators.
Complex reference_correlator(const HarmonicCase& hc, const TimeEvolution& evolution, double t);

/// Reconstructed estimate at lag t from exact generating values.
CorrelatorEstimate reconstructed_estimate(const HarmonicCase& hc, const TimeEvolution& evolution, EstimatorKind kind,
                                          double t, double h);

struct BiasStudy {
  EstimatorKind estimator = EstimatorKind::kRect;
  std::vector<double> hs;
  std::vector<double> biases;  ///< |estimate - reference|
  double slope = 0.0;
};

BiasStudy estimator_bias_study(const HarmonicCase& hc, const TimeEvolution& evolution, EstimatorKind kind, double t,
                               const std::vector<double>& hs);

struct ShotNoiseStudy {
  std::vector<int> shots;
  std::vector<double> stds;         ///< complex standard deviation over seeds
  std::vector<double> model;        ///< stat_error_model(h, M)
  double slope = 0.0;               ///< log std vs log M; 0 for a single shot count
  double worst_ratio = 1.0;         ///< max over M of max(std/model, model/std)
};

/// Rectangle estimator of one generating function sampled with shot_sample, `n_seeds`
/// independent repetitions per shot count.
ShotNoiseStudy shot_noise_study(const GeneratingEvaluator& f, double h, const std::vector<int>& shots, int n_seeds,
                                std::uint64_t base_seed);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// max |<psi| exp(i a Q_c) exp(i b Q_s) - exp(i (a Q_c + b Q_s)) |psi>| style deviation: the
/// largest amplitude difference between the factorized and joint exponentials on a random state.
double factorization_deviation(int n_sites, int bits, int k, double theta1, double theta2, std::uint64_t seed);

/// Runs every oracle-scale check once; failures are collected, not short-circuited.
/// The DFT sign fault in the config is applied to the propagators under test.
std::vector<CheckResult> run_validation_suite(const RunConfig& config);

/// Names reported by run_validation_suite, in order.
const std::vector<std::string>& validation_check_names();

}  // namespace fputq
