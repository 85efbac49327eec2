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

#include "fputq/dense_oracle.hpp"
#include "fputq/errors.hpp"
#include "fputq/propagator.hpp"
#include "fputq/validation.hpp"

namespace fputq {
namespace {

ModelParams chain(int n, double kappa = 1.0, double beta = 0.0) {
  ModelParams p;
  p.n_sites = n;
  p.kappa = kappa;
  p.beta = beta;
  return p;
}

GridSpec grid(int b, double q_max) {
  GridSpec g;
  g.bits_per_site = b;
  g.q_max = q_max;
  return g;
}

LatticeState random_state(SiteLayout layout, std::uint64_t seed) {
  LatticeState s(layout);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  for (auto& a : s.amplitudes()) a = {n(rng), n(rng)};
  s.normalize();
  return s;
}

double distance(const LatticeState& a, const LatticeState& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::norm(a[i] - b[i]);
  return std::sqrt(d);
}

TEST(KineticStep, ZeroTauIsIdentity) {
  SplitOperator op(chain(2, 1.0, 0.5), grid(3, 2.0));
  auto s = random_state({2, 3}, 1);
  const auto before = s;
  op.kinetic_step(s, 0.0);
  EXPECT_LT(distance(s, before), 1e-12);
}

TEST(KineticStep, MomentumEigenstateOnlyPicksUpAPhase) {
  const auto g = grid(3, 2.0);
  SplitOperator op(chain(2), g);
  LatticeState s(SiteLayout{2, 3});
  const double two_pi = 2.0 * std::acos(-1.0);
  // Plane wave with frequencies (3, 6) on sites (0, 1).
  for (std::uint64_t x = 0; x < s.size(); ++x) {
    const auto x0 = s.layout().site_value(x, 0);
    const auto x1 = s.layout().site_value(x, 1);
    s[x] = std::polar(1.0 / 8.0, two_pi * (3.0 * x0 + 6.0 * x1) / 8.0);
  }
  const auto before = s;
  op.kinetic_step(s, 0.37);
  EXPECT_NEAR(std::abs(inner(before, s)), 1.0, 1e-12);
}

TEST(KineticStep, IsAdditiveInTau) {
  SplitOperator op(chain(3, 1.0, 0.3), grid(3, 2.0));
  auto a = random_state({3, 3}, 2);
  auto b = a;
  op.kinetic_step(a, 0.11);
  op.kinetic_step(a, 0.23);
  op.kinetic_step(b, 0.34);
  EXPECT_LT(distance(a, b), 1e-11);
}

TEST(KineticStep, ShapeMismatch) {
  SplitOperator op(chain(2), grid(3, 2.0));
  LatticeState s(SiteLayout{2, 4});
  EXPECT_THROW(op.kinetic_step(s, 0.1), ShapeError);
  EXPECT_THROW(op.potential_step(s, 0.1), ShapeError);
}

TEST(PotentialStep, ZeroTauAndFreeChainAreIdentity) {
  auto s = random_state({2, 3}, 3);
  const auto before = s;
  SplitOperator(chain(2, 1.0, 1.0), grid(3, 2.0)).potential_step(s, 0.0);
  EXPECT_LT(distance(s, before), 1e-15);
  SplitOperator(chain(2, 0.0, 0.0), grid(3, 2.0)).potential_step(s, 0.7);
  EXPECT_LT(distance(s, before), 1e-15);
}

TEST(PotentialStep, BasisStateKeepsItsProbability) {
  SplitOperator op(chain(2, 1.0, 2.0), grid(3, 2.0));
  auto s = LatticeState::basis_state({2, 3}, 13);
  op.potential_step(s, 0.9);
  EXPECT_NEAR(std::norm(s[13]), 1.0, 1e-12);
}

TEST(TrotterStep, FreeChainMatchesExactForAllOrders) {
  const auto p = chain(2, 0.0, 0.0);
  const auto g = grid(3, 1.5);
  const auto psi = random_state({2, 3}, 4);
  auto exact = psi;
  exact_evolve(exact, p, g, 0.3);
  for (auto order : {TrotterOrder::kFirst, TrotterOrder::kSecond, TrotterOrder::kSuzuki4}) {
    auto s = psi;
    trotter_step(s, p, g, 0.3, order);
    EXPECT_LT(distance(s, exact), 1e-10) << to_string(order);
  }
}

TEST(TrotterStep, SecondOrderLocalErrorIsCubic) {
  const auto c = trotter_case();
  const SplitOperator op(c.params, c.grid);
  const DenseSpectrum spectrum(c.params, c.grid);
  const std::vector<double> dts{0.02, 0.01, 0.005, 0.0025};
  std::vector<double> errs;
  for (double dt : dts) {
    auto s = c.psi0;
    op.trotter_step(s, dt, TrotterOrder::kSecond);
    const auto exact = from_eigen(c.psi0.layout(), spectrum.evolve(to_eigen(c.psi0), dt));
    errs.push_back(distance(s, exact));
  }
  const double slope = loglog_slope(dts, errs);
  EXPECT_GE(slope, 2.7);
  EXPECT_LE(slope, 3.3);
}

TEST(TrotterStep, GlobalErrorOrders) {
  const auto c = trotter_case();
  const std::vector<double> dts{0.2, 0.1, 0.05, 0.025};
  const auto first = trotter_order_study(c.params, c.grid, c.psi0, TrotterOrder::kFirst, 1.0, dts);
  const auto second = trotter_order_study(c.params, c.grid, c.psi0, TrotterOrder::kSecond, 1.0, dts);
  EXPECT_NEAR(first.slope, 1.0, 0.3);
  EXPECT_NEAR(second.slope, 2.0, 0.3);
}

TEST(TrotterOrder, ParseAndErrors) {
  EXPECT_EQ(parse_trotter_order("second"), TrotterOrder::kSecond);
  EXPECT_EQ(parse_trotter_order("4"), TrotterOrder::kSuzuki4);
  EXPECT_EQ(parse_trotter_order("first"), TrotterOrder::kFirst);
  EXPECT_THROW(parse_trotter_order("third"), InputError);
  EXPECT_NEAR(suzuki4_weight(), 1.0 / (4.0 - std::cbrt(4.0)), 1e-15);
}

TEST(Evolve, SingleStepEqualsTrotterStep) {
  const auto p = chain(2, 1.0, 0.5);
  const auto g = grid(3, 2.0);
  auto a = random_state({2, 3}, 5);
  auto b = a;
  evolve(a, {TrotterOrder::kSuzuki4, 0.05, 1}, p, g);
  trotter_step(b, p, g, 0.05, TrotterOrder::kSuzuki4);
  EXPECT_LT(distance(a, b), 1e-15);
}

TEST(Evolve, CompositionIsExact) {
  const SplitOperator op(chain(3, 1.0, 0.4), grid(3, 2.0));
  auto a = random_state({3, 3}, 6);
  auto b = a;
  op.evolve(a, {TrotterOrder::kSecond, 0.02, 10});
  op.evolve(b, {TrotterOrder::kSecond, 0.02, 5});
  op.evolve(b, {TrotterOrder::kSecond, 0.02, 5});
  EXPECT_LT(distance(a, b), 1e-13);
}

TEST(Evolve, FusedKineticStepsMatchUnfused) {
  const SplitOperator op(chain(3, 1.0, 0.4), grid(3, 2.0));
  for (auto order : {TrotterOrder::kFirst, TrotterOrder::kSecond, TrotterOrder::kSuzuki4}) {
    auto a = random_state({3, 3}, 7);
    auto b = a;
    op.evolve(a, {order, 0.03, 7});
    op.evolve_fused(b, order, 0.03, 7);
    EXPECT_LT(distance(a, b), 1e-12) << to_string(order);
  }
}

TEST(Evolve, RejectsBadPlan) {
  LatticeState s(SiteLayout{2, 3});
  EXPECT_THROW(evolve(s, {TrotterOrder::kSecond, 0.0, 1}, chain(2), grid(3, 1.0)), InputError);
  EXPECT_THROW(evolve(s, {TrotterOrder::kSecond, 0.1, 0}, chain(2), grid(3, 1.0)), InputError);
}

TEST(ExactEvolve, IdentityGroupPropertyAndEnergy) {
  const auto p = chain(2, 1.0, 0.8);
  const auto g = grid(3, 2.0);
  const auto psi = random_state({2, 3}, 8);
  auto zero = psi;
  exact_evolve(zero, p, g, 0.0);
  EXPECT_LT(distance(zero, psi), 1e-12);

  auto a = psi;
  exact_evolve(a, p, g, 0.4);
  exact_evolve(a, p, g, 0.7);
  auto b = psi;
  exact_evolve(b, p, g, 1.1);
  EXPECT_LT(distance(a, b), 1e-9);

  const DenseSpectrum spectrum(p, g);
  const double e0 = spectrum.expectation(to_eigen(psi));
  const double e1 = spectrum.expectation(to_eigen(b));
  EXPECT_NEAR(e1, e0, 1e-9 * std::abs(e0));
}

TEST(ExactEvolve, GuardViolation) {
  LatticeState s(SiteLayout{3, 5});
  EXPECT_THROW(exact_evolve(s, chain(3), grid(5, 2.0), 0.1), CapacityError);
}

TEST(StepsForDuration, NamesTheOffendingValue) {
  EXPECT_EQ(steps_for_duration(1.0, 0.01), 100);
  EXPECT_EQ(steps_for_duration(0.0, 0.01), 0);
  try {
    steps_for_duration(0.015, 0.01);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("0.015"), std::string::npos) << e.what();
  }
}

TEST(TrotterEvolution, AdvanceMatchesEvolve) {
  auto op = std::make_shared<const SplitOperator>(chain(2, 1.0, 0.5), grid(3, 2.0));
  TrotterEvolution evo(op, TrotterOrder::kSecond, 0.05);
  auto a = random_state({2, 3}, 9);
  auto b = a;
  evo.advance(a, 0.5);
  op->evolve(b, {TrotterOrder::kSecond, 0.05, 10});
  EXPECT_LT(distance(a, b), 1e-12);
  EXPECT_THROW(evo.advance(a, 0.125), InputError);
}

TEST(SplitOperator, EnergyExpectationsMatchDenseOracle) {
  const auto p = chain(2, 1.0, 0.6);
  const auto g = grid(3, 2.0);
  const SplitOperator op(p, g);
  const auto psi = random_state({2, 3}, 10);
  const DenseSpectrum spectrum(p, g);
  EXPECT_NEAR(op.kinetic_expectation(psi) + op.potential_expectation(psi), spectrum.expectation(to_eigen(psi)), 1e-10);
}

TEST(SplitOperator, SignFaultBreaksAgreementWithOracle) {
  const auto c = trotter_case();
  PropagatorOptions bad;
  bad.inject_dft_sign_fault = true;
  const auto good = trotter_order_study(c.params, c.grid, c.psi0, TrotterOrder::kSuzuki4, 1.0, {0.01});
  const auto broken = trotter_order_study(c.params, c.grid, c.psi0, TrotterOrder::kSuzuki4, 1.0, {0.01}, bad);
  EXPECT_LT(good.errors[0], 1e-5);
  EXPECT_GT(broken.errors[0], 1e-2);
}

}  // namespace
}  // namespace fputq
