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

// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fputq/commands.hpp"
#include "fputq/correlator.hpp"
#include "fputq/quadratures.hpp"
#include "fputq/resources.hpp"
#include "fputq/validation.hpp"

namespace {

using namespace fputq;

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome table_one() {
  const std::uint64_t expected[3][3] = {{8, 60, 144}, {16, 108, 288}, {32, 204, 576}};
  bool ok = true;
  std::string detail;
  for (const auto& row : expected) {
    const auto r = resource_report(static_cast<int>(row[0]), 6, 12, TrotterOrder::kSecond, 1.0, 0.01);
    ok = ok && r.qubits_serial == row[1] && r.qubits_parallel == row[2];
    detail += fmt("N=%d: %llu/%llu ", static_cast<int>(row[0]), static_cast<unsigned long long>(r.qubits_serial),
                  static_cast<unsigned long long>(r.qubits_parallel));
  }
  return {ok, detail};
}

Outcome total_qubits() {
  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<int> nd(2, 256), bd(2, 12);
  bool ok = true;
  std::string detail;
  for (int i = 0; i < 10; ++i) {
    const int n = nd(rng), b = bd(rng);
    // ceil(3 N b / 2) in integer arithmetic.
    const auto closed = static_cast<std::uint64_t>(3 * n * b / 2 + (3 * n * b) % 2);
    const auto got = resource_report(n, b, 2 * b, TrotterOrder::kSecond, 1.0, 0.01).qubits_total_formula;
    ok = ok && got == closed;
    detail += fmt("(%d,%d)=%llu ", n, b, static_cast<unsigned long long>(got));
  }
  return {ok, detail};
}

Outcome commutation() {
  double worst_comm = 0.0;
  double worst_fact = 0.0;
  std::uint64_t seed = 1;
  for (int n : {2, 3, 4}) {
    for (int b : {2, 3}) {
      GridSpec g;
      g.bits_per_site = b;
      g.q_max = 1.5;
      for (int k = 0; k < n; ++k) {
        worst_comm = std::max(worst_comm, commutator_norm(n, k, g));
        worst_fact = std::max(worst_fact, factorization_deviation(n, b, k, 0.7, -1.3, seed++));
      }
    }
  }
  return {worst_comm == 0.0 && worst_fact <= 1e-12,
          fmt("max commutator %.3g, max factorization deviation %.3g", worst_comm, worst_fact)};
}

Outcome trotter_slopes() {
  const auto c = trotter_case();
  const std::vector<double> dts{0.2, 0.1, 0.05, 0.025};
  const double s1 = trotter_order_study(c.params, c.grid, c.psi0, TrotterOrder::kFirst, 1.0, dts).slope;
  const double s2 = trotter_order_study(c.params, c.grid, c.psi0, TrotterOrder::kSecond, 1.0, dts).slope;
  const double s4 = trotter_order_study(c.params, c.grid, c.psi0, TrotterOrder::kSuzuki4, 1.0, dts).slope;
  const bool ok = std::abs(s1 - 1.0) <= 0.3 && std::abs(s2 - 2.0) <= 0.3 && std::abs(s4 - 4.0) <= 0.5;
  return {ok, fmt("slopes first %.3f, second %.3f, suzuki4 %.3f", s1, s2, s4)};
}

Outcome unitarity() {
  ModelParams p;
  p.n_sites = 3;
  p.beta = 1.0;
  GridSpec g;
  g.bits_per_site = 4;
  g.q_max = default_q_max(p, 4);
  auto s = init_product_gaussian(p, g, default_gaussian_width(p));
  const SplitOperator op(p, g);
  op.evolve_fused(s, TrotterOrder::kSecond, 0.01, 10000);
  const double drift = std::abs(s.norm() - 1.0);
  return {drift <= 1e-10, fmt("norm drift after 1e4 steps %.3g", drift)};
}

std::vector<double> lag_grid(double t_end, double spacing) {
  std::vector<double> t;
  const int n = static_cast<int>(std::floor(t_end / spacing + 1e-9));
  for (int i = 0; i <= n; ++i) t.push_back(i * spacing);
  return t;
}

Outcome harmonic_frequency() {
  // Large chain: frequency from zero crossings of the Trotter-evolved series.
  const auto big = harmonic_case(4, 5, 1, 8.0, 1.0, 1.0);
  const double omega = dispersion(big.params, 1);
  const double expected = std::sqrt(2.0 * (1.0 - std::cos(std::acos(-1.0) / 2.0)));
  auto op = std::make_shared<const SplitOperator>(big.params, big.grid);
  const TrotterEvolution evo(op, TrotterOrder::kSecond, 0.01);
  const CorrelatorSeries series(evo, big.grid, big.weights, big.psi0);
  SeriesOptions opt;
  opt.h = 0.05;
  opt.times = lag_grid(4.0 * std::acos(-1.0) / omega, 0.05);
  std::vector<double> ts, re;
  for (const auto& pt : series.run(opt)) {
    ts.push_back(pt.time_lag);
    re.push_back(pt.correlator.value.real());
  }
  const double fitted = zero_crossing_frequency(ts, re);
  const double rel = std::abs(fitted - expected) / expected;

  // Small chain: the same estimator against the dense-oracle correlator, point by point.
  const auto small = harmonic_case(2, 4, 1, 4.0, 0.6, 0.8);
  auto small_op = std::make_shared<const SplitOperator>(small.params, small.grid);
  const TrotterEvolution small_evo(small_op, TrotterOrder::kSecond, 0.01);
  const ExactEvolution exact(small.params, small.grid);
  const CorrelatorSeries small_series(small_evo, small.grid, small.weights, small.psi0);
  SeriesOptions sopt;
  sopt.h = 0.05;
  sopt.times = lag_grid(4.0 * std::acos(-1.0) / dispersion(small.params, 1), 0.05);
  double worst_excess = -1e300;
  double worst_error = 0.0;
  for (const auto& pt : small_series.run(sopt)) {
    const auto ref = reference_correlator(small, exact, pt.time_lag);
    const double err = std::abs(pt.correlator.value - ref);
    worst_error = std::max(worst_error, err);
    worst_excess = std::max(worst_excess, err - (pt.correlator.bias_bound + 1e-6));
  }
  const bool ok = rel <= 0.05 && worst_excess <= 0.0;
  return {ok, fmt("omega fit %.5f vs %.5f (rel %.2e); N=2 max |est - oracle| %.3g, worst margin to bound + 1e-6 "
                  "%.3g over %zu lags",
                  fitted, expected, rel, worst_error, worst_excess, sopt.times.size())};
}

Outcome bias_orders() {
  const auto hc = default_harmonic_case();
  const ExactEvolution exact(hc.params, hc.grid);
  const std::vector<double> hs{0.4, 0.2, 0.1, 0.05};
  const double r = estimator_bias_study(hc, exact, EstimatorKind::kRect, 1.0, hs).slope;
  const double c = estimator_bias_study(hc, exact, EstimatorKind::kCentral, 1.0, hs).slope;
  const double x = estimator_bias_study(hc, exact, EstimatorKind::kRichardson, 1.0, hs).slope;
  const bool ok = r >= 0.7 && r <= 1.3 && c >= 1.6 && c <= 2.4 && x >= 1.6 && x <= 2.4;
  return {ok, fmt("slopes rect %.3f, central %.3f, richardson %.3f", r, c, x)};
}

Outcome shot_noise() {
  const auto hc = default_harmonic_case();
  const ExactEvolution exact(hc.params, hc.grid);
  auto f = [&](double a, double b) {
    return generating_value(CorrelatorKind::kCC, a, b, 1.0, hc.psi0, exact, hc.grid, hc.weights);
  };
  const auto study = shot_noise_study(f, 0.2, {256, 1024, 4096, 16384}, 200, 7);
  const bool ok = std::abs(study.slope + 0.5) <= 0.1 && study.worst_ratio <= 2.0;
  return {ok, fmt("slope %.3f, worst std/model ratio %.3f", study.slope, study.worst_ratio)};
}

Outcome depth_linearity() {
  const int n_sites = 4, b = 3, a = 6;
  const auto one = build_trotter_circuit(n_sites, b, a, TrotterOrder::kSecond, 1).depth();
  bool linear = true;
  for (int n = 1; n <= 50; ++n) {
    linear = linear && build_trotter_circuit(n_sites, b, a, TrotterOrder::kSecond, n).depth() == n * one;
  }
  std::vector<double> bs, gb, ns, gn;
  for (int bb = 4; bb <= 32; bb *= 2) {
    bs.push_back(bb);
    gb.push_back(static_cast<double>(resource_report(8, bb, 2 * bb, TrotterOrder::kSecond, 1.0, 0.01).gates_per_step));
  }
  for (int n = 8; n <= 128; n *= 2) {
    ns.push_back(n);
    gn.push_back(static_cast<double>(resource_report(n, 6, 12, TrotterOrder::kSecond, 1.0, 0.01).gates_per_step));
  }
  const double sb = loglog_slope(bs, gb);
  const double sn = loglog_slope(ns, gn);
  const bool ok = linear && std::abs(sb - 2.0) <= 0.05 && std::abs(sn - 1.0) <= 0.05;
  return {ok, fmt("depth linear for n = 1..50: %s (step depth %llu); exponent vs b %.4f, vs N %.4f",
                  linear ? "yes" : "no", static_cast<unsigned long long>(one), sb, sn)};
}

Outcome f00() {
  const auto hc = default_harmonic_case();
  auto op = std::make_shared<const SplitOperator>(hc.params, hc.grid);
  const TrotterEvolution evo(op, TrotterOrder::kSecond, 0.01);
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> steps(0, 300);
  double worst = 0.0;
  std::string ts;
  for (int i = 0; i < 5; ++i) {
    const double t = steps(rng) * 0.01;
    ts += fmt("%.2f ", t);
    for (auto kind : kAllCorrelatorKinds) {
      worst = std::max(worst, std::abs(generating_value(kind, 0.0, 0.0, t, hc.psi0, evo, hc.grid, hc.weights) - 1.0));
    }
  }
  return {worst <= 1e-10, fmt("max |F(0,0) - 1| = %.3g at t = %s", worst, ts.c_str())};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  const auto root = std::filesystem::temp_directory_path() / "fputq_acceptance_determinism";
  std::filesystem::remove_all(root);
  auto config = parse_config_text(
      "[model]\nn_sites = 3\nbeta = 0.5\n[grid]\nbits = 4\n[trotter]\ndt = 0.01\n"
      "[correlator]\ntimes = 0, 0.1, 0.2, 0.5\nestimator = rect, richardson\nshots = 2048\nseed = 424242\n"
      "[state]\ndisplacement = 0.4\n");
  config.output_directory = (root / "a").string();
  const auto a = cmd_correlator(config);
  config.output_directory = (root / "b").string();
  const auto b = cmd_correlator(config);
  const auto ta = slurp(a.csv_path);
  const auto tb = slurp(b.csv_path);
  std::filesystem::remove_all(root);
  return {!ta.empty() && ta == tb, fmt("%zu bytes per run, identical: %s", ta.size(), ta == tb ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "table1_regression", 1.0, table_one},
      {2, "total_qubit_formula", 1.0, total_qubits},
      {3, "quadrature_commutation", 10.0, commutation},
      {4, "trotter_order_slopes", 120.0, trotter_slopes},
      {5, "unitarity", 120.0, unitarity},
      {6, "harmonic_mode_frequency", 600.0, harmonic_frequency},
      {7, "estimator_bias_orders", 300.0, bias_orders},
      {8, "shot_noise_scaling", 300.0, shot_noise},
      {9, "depth_linearity", 30.0, depth_linearity},
      {10, "f00_normalization", 60.0, f00},
      {11, "determinism", 60.0, determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = elapsed <= c.budget_s;
    const bool passed = r.passed && in_time;
    failures += passed ? 0 : 1;
    std::printf("%s %d %s: %s [%.2fs of %.0fs%s]\n", passed ? "PASS" : "FAIL", c.id, c.name.c_str(), r.detail.c_str(),
                elapsed, c.budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
