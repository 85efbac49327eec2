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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fputq/correlator.hpp"
#include "fputq/errors.hpp"
#include "fputq/validation.hpp"

namespace fputq {
namespace {

constexpr double kC = 0.731;

Complex bilinear(double a, double b) { return 1.0 - a * b * kC; }

TEST(Estimators, QuadraticGeneratingFunctionIsExact) {
  for (auto kind : {EstimatorKind::kRect, EstimatorKind::kCentral, EstimatorKind::kRichardson}) {
    for (double h : {0.4, 0.05, 1e-3}) {
      const auto e = estimate(kind, bilinear, 0.0, h, 1.0);
      EXPECT_NEAR(e.value.real(), kC, 1e-14 / (h * h) + 1e-12) << to_string(kind) << " h=" << h;
      EXPECT_NEAR(e.value.imag(), 0.0, 1e-12);
    }
  }
}

TEST(Estimators, RectBiasOnSymmetricExponentialIsQuadratic) {
  auto f = [](double a, double b) { return Complex(std::exp(-a * b * kC)); };
  std::vector<double> hs{0.4, 0.2, 0.1, 0.05}, errs;
  for (double h : hs) errs.push_back(std::abs(rect_estimator(f, 0.0, h, 1.0).value - kC));
  EXPECT_NEAR(loglog_slope(hs, errs), 2.0, 0.1);
  EXPECT_LT(errs.back(), errs.front());
}

TEST(Estimators, CentralCancelsCubicContamination) {
  auto f = [](double a, double b) { return 1.0 - a * b * kC + 0.37 * a * a * b - 0.91 * a * b * b; };
  EXPECT_NEAR(central_estimator(f, 0.0, 0.3, 1.0).value.real(), kC, 1e-12);
  EXPECT_GT(std::abs(rect_estimator(f, 0.0, 0.3, 1.0).value.real() - kC), 1e-3);
}

TEST(Estimators, RichardsonRemovesLinearRectBias) {
  // rect(h) = C + 0.5 * (0.37 - 0.91) h exactly for this cubic F.
  auto f = [](double a, double b) { return 1.0 - a * b * kC + 0.37 * a * a * b - 0.91 * a * b * b; };
  EXPECT_NEAR(richardson_estimator(f, 0.0, 0.3, 1.0).value.real(), kC, 1e-12);
}

TEST(Estimators, MetadataAndBounds) {
  const auto r = rect_estimator(bilinear, 0.5, 0.2, 2.0);
  EXPECT_EQ(r.estimator, EstimatorKind::kRect);
  EXPECT_EQ(r.time_lag, 0.5);
  EXPECT_EQ(r.h, 0.2);
  EXPECT_DOUBLE_EQ(r.bias_bound, 0.2 * 8.0);
  EXPECT_DOUBLE_EQ(central_estimator(bilinear, 0.0, 0.2, 2.0).bias_bound, 0.04 * 16.0);
  EXPECT_DOUBLE_EQ(bias_bound(EstimatorKind::kRichardson, 0.2, 2.0), 0.04 * 16.0);
}

TEST(Estimators, RejectNonPositiveStep) {
  EXPECT_THROW(rect_estimator(bilinear, 0.0, 0.0, 1.0), InputError);
  EXPECT_THROW(central_estimator(bilinear, 0.0, -0.1, 1.0), InputError);
  EXPECT_THROW(richardson_estimator(bilinear, 0.0, 0.0, 1.0), InputError);
  EXPECT_THROW(stencil(EstimatorKind::kRect, 0.0), InputError);
}

TEST(Estimators, StencilReproducesEstimator) {
  auto f = [](double a, double b) { return Complex(std::cos(a + 2 * b), std::sin(a * b)); };
  for (auto kind : {EstimatorKind::kRect, EstimatorKind::kCentral, EstimatorKind::kRichardson}) {
    Complex sum{};
    for (const auto& p : stencil(kind, 0.1)) sum += p.weight * f(p.theta1, p.theta2);
    EXPECT_LT(std::abs(sum - estimate(kind, f, 0.0, 0.1, 1.0).value), 1e-9) << to_string(kind);
  }
}

TEST(Estimators, ParseNames) {
  EXPECT_EQ(parse_estimator("rect"), EstimatorKind::kRect);
  EXPECT_EQ(parse_estimator("central"), EstimatorKind::kCentral);
  EXPECT_EQ(parse_estimator("richardson"), EstimatorKind::kRichardson);
  EXPECT_THROW(parse_estimator("simpson"), InputError);
}

TEST(Reconstruct, Examples) {
  const Complex a{0.3, 0.1}, b{-0.2, 0.4};
  EXPECT_EQ(reconstruct_correlator(a, b, 0.0, 0.0), a - b);
  EXPECT_EQ(reconstruct_correlator(0.0, 0.0, 0.0, 0.0), Complex{});
  EXPECT_EQ(reconstruct_correlator(a, a, b, -b), Complex{});
  EXPECT_EQ(reconstruct_correlator(0.0, 0.0, Complex(1.0, 0.0), 0.0), Complex(0.0, -1.0));
}

TEST(ShotSample, DegenerateAndDeterministic) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) EXPECT_EQ(shot_sample({1.0, 0.0}, 37, seed).real(), 1.0);
  EXPECT_EQ(shot_sample({-1.0, 1.0}, 5, 3), Complex(-1.0, 1.0));
  const auto a = shot_sample({0.3, -0.2}, 1000, 42);
  const auto b = shot_sample({0.3, -0.2}, 1000, 42);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, shot_sample({0.3, -0.2}, 1000, 43));
}

TEST(ShotSample, BinomialSpread) {
  const double re = 0.4;
  const int m = 10000;
  double s = 0.0, s2 = 0.0;
  for (int r = 0; r < 200; ++r) {
    const double v = shot_sample({re, 0.0}, m, derive_seed(7, r)).real();
    s += v;
    s2 += v * v;
  }
  const double mean = s / 200.0;
  const double sd = std::sqrt(s2 / 200.0 - mean * mean);
  const double expected = std::sqrt(1.0 - re * re) / std::sqrt(m);
  EXPECT_NEAR(sd / expected, 1.0, 0.2);
}

TEST(ShotSample, RejectsBadInputs) {
  EXPECT_THROW(shot_sample({0.0, 0.0}, 0, 1), InputError);
  EXPECT_THROW(shot_sample({1.1, 0.0}, 10, 1), InputError);
  EXPECT_NO_THROW(shot_sample({1.0 + 1e-10, 0.0}, 10, 1));
}

TEST(StatErrorModel, Scaling) {
  EXPECT_NEAR(stat_error_model(0.2, 1000) / stat_error_model(0.2, 2000), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(stat_error_model(0.1, 1000) / stat_error_model(0.2, 1000), 4.0, 1e-12);
  EXPECT_DOUBLE_EQ(stat_error_model(1.0, 4), 1.0);
  EXPECT_EQ(execution_count(10, 100), 4000u);
  EXPECT_EQ(execution_count(0, 100), 0u);
}

TEST(StatErrorModel, WithinFactorTwoOfMonteCarlo) {
  auto f = [](double a, double b) { return Complex(std::cos(0.8 * a * b), 0.3 * std::sin(a - b)); };
  const auto study = shot_noise_study(f, 0.2, {4096}, 200, 11);
  EXPECT_LE(study.worst_ratio, 2.0);
}

class GeneratingValueTest : public ::testing::Test {
 protected:
  HarmonicCase hc = default_harmonic_case();
  std::shared_ptr<const SplitOperator> op = std::make_shared<const SplitOperator>(hc.params, hc.grid);
  TrotterEvolution evo{op, TrotterOrder::kSecond, 0.01};
};

TEST_F(GeneratingValueTest, F00IsOne) {
  for (auto kind : kAllCorrelatorKinds) {
    for (double t : {0.0, 0.37, 1.0}) {
      const auto v = generating_value(kind, 0.0, 0.0, t, hc.psi0, evo, hc.grid, hc.weights);
      EXPECT_LT(std::abs(v - 1.0), 1e-10) << to_string(kind) << " t=" << t;
    }
  }
}

TEST_F(GeneratingValueTest, InverseSourcesAtZeroLag) {
  for (double th : {0.3, -1.2}) {
    const auto v = generating_value(CorrelatorKind::kCC, th, -th, 0.0, hc.psi0, evo, hc.grid, hc.weights);
    EXPECT_LT(std::abs(v - 1.0), 1e-10);
  }
}

TEST_F(GeneratingValueTest, SymmetricAtZeroLagAndBounded) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 5; ++i) {
    const double a = u(rng), b = u(rng);
    const auto x = generating_value(CorrelatorKind::kCC, a, b, 0.0, hc.psi0, evo, hc.grid, hc.weights);
    const auto y = generating_value(CorrelatorKind::kCC, b, a, 0.0, hc.psi0, evo, hc.grid, hc.weights);
    EXPECT_LT(std::abs(x - y), 1e-10);
    for (auto kind : kAllCorrelatorKinds) {
      const auto v = generating_value(kind, a, b, 0.2, hc.psi0, evo, hc.grid, hc.weights);
      EXPECT_LE(std::abs(v), 1.0 + 1e-9);
    }
  }
}

TEST_F(GeneratingValueTest, RejectsOffGridTime) {
  EXPECT_THROW(generating_value(CorrelatorKind::kCC, 0.1, 0.1, 0.015, hc.psi0, evo, hc.grid, hc.weights), InputError);
}

TEST_F(GeneratingValueTest, RectAtZeroLagMatchesStaticExpectation) {
  const ExactEvolution exact(hc.params, hc.grid);
  const auto ref = quadrature_correlator(CorrelatorKind::kCC, 0.0, hc.psi0, exact, hc.grid, hc.weights);
  auto f = [&](double a, double b) {
    return generating_value(CorrelatorKind::kCC, a, b, 0.0, hc.psi0, exact, hc.grid, hc.weights);
  };
  const auto e = rect_estimator(f, 0.0, 0.05, quadrature_max(hc.grid, hc.weights, Quadrature::kCos));
  EXPECT_LE(std::abs(e.value - ref), e.bias_bound + 1e-8);
  EXPECT_NEAR(ref.imag(), 0.0, 1e-12);
}

TEST_F(GeneratingValueTest, EstimatorBiasOrders) {
  const ExactEvolution exact(hc.params, hc.grid);
  const std::vector<double> hs{0.4, 0.2, 0.1, 0.05};
  const auto rect = estimator_bias_study(hc, exact, EstimatorKind::kRect, 1.0, hs);
  const auto central = estimator_bias_study(hc, exact, EstimatorKind::kCentral, 1.0, hs);
  const auto rich = estimator_bias_study(hc, exact, EstimatorKind::kRichardson, 1.0, hs);
  EXPECT_GE(rect.slope, 0.7);
  EXPECT_LE(rect.slope, 1.3);
  EXPECT_GE(central.slope, 1.6);
  EXPECT_LE(central.slope, 2.4);
  EXPECT_GE(rich.slope, 1.6);
  EXPECT_LE(rich.slope, 2.4);
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (hs[i] > 0.1) continue;
    EXPECT_LT(central.biases[i], rect.biases[i]);
    EXPECT_LT(rich.biases[i], rect.biases[i]);
  }
}

TEST(CorrelatorSeries, MatchesPointwiseEvaluation) {
  const auto hc = default_harmonic_case();
  const ExactEvolution exact(hc.params, hc.grid);
  const CorrelatorSeries series(exact, hc.grid, hc.weights, hc.psi0);
  SeriesOptions opt;
  opt.times = {0.0, 0.5, 1.0};
  opt.estimators = {EstimatorKind::kRect, EstimatorKind::kRichardson};
  opt.h = 0.1;
  const auto points = series.run(opt);
  ASSERT_EQ(points.size(), 6u);
  for (const auto& p : points) {
    const auto direct = reconstructed_estimate(hc, exact, p.estimator, p.time_lag, opt.h);
    EXPECT_LT(std::abs(p.correlator.value - direct.value), 1e-9);
    double parts = 0.0;
    for (const auto& part : p.parts) parts += part.bias_bound;
    EXPECT_DOUBLE_EQ(p.correlator.bias_bound, parts);
  }
}

TEST(CorrelatorSeries, SymmetricStateHasRealCorrelator) {
  auto hc = harmonic_case(2, 4, 1, 4.0, 0.6, 0.0);
  const ExactEvolution exact(hc.params, hc.grid);
  const CorrelatorSeries series(exact, hc.grid, hc.weights, hc.psi0);
  SeriesOptions opt;
  opt.times = {0.0, 0.7, 1.4};
  for (const auto& p : series.run(opt)) {
    double q2 = 0.0;
    for (auto kind : kAllCorrelatorKinds) {
      if (kind == CorrelatorKind::kCC || kind == CorrelatorKind::kSS)
        q2 += std::abs(quadrature_correlator(kind, 0.0, hc.psi0, exact, hc.grid, hc.weights));
    }
    EXPECT_LE(std::abs(p.correlator.value.imag()), std::max(p.correlator.bias_bound, 1e-6) * (1.0 + q2));
  }
}

TEST(CorrelatorSeries, ShotsAreSeededAndReproducible) {
  const auto hc = default_harmonic_case();
  const ExactEvolution exact(hc.params, hc.grid);
  const CorrelatorSeries series(exact, hc.grid, hc.weights, hc.psi0);
  SeriesOptions opt;
  opt.times = {0.0, 0.5};
  opt.shots = 256;
  opt.seed = 99;
  const auto a = series.run(opt);
  const auto b = series.run(opt);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].correlator.value, b[i].correlator.value);
  opt.seed = 100;
  EXPECT_NE(series.run(opt)[0].correlator.value, a[0].correlator.value);
}

TEST(CorrelatorSeries, RejectsDecreasingTimes) {
  const auto hc = default_harmonic_case();
  const ExactEvolution exact(hc.params, hc.grid);
  const CorrelatorSeries series(exact, hc.grid, hc.weights, hc.psi0);
  SeriesOptions opt;
  opt.times = {1.0, 0.5};
  EXPECT_THROW(series.run(opt), InputError);
}

}  // namespace
}  // namespace fputq
