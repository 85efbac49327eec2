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

#include "fputq/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "fputq/circuit_ir.hpp"
#include "fputq/dense_oracle.hpp"
#include "fputq/errors.hpp"
#include "fputq/resources.hpp"

namespace fputq {

double fit_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ShapeError("fit_slope needs equally long inputs");
  if (x.size() < 2) throw InputError("fit_slope needs at least two points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw InputError("fit_slope needs at least two distinct x values");
  return sxy / sxx;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx(x.size());
  std::vector<double> ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) throw InputError("loglog_slope needs positive x");
    lx[i] = std::log(x[i]);
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(y[i] > 0.0)) throw InputError("loglog_slope needs positive y");
    ly[i] = std::log(y[i]);
  }
  return fit_slope(lx, ly);
}

double zero_crossing_frequency(std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size()) throw ShapeError("times and values differ in length");
  std::vector<double> crossings;
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double a = values[i - 1];
    const double b = values[i];
    if (a == 0.0 && i == 1) crossings.push_back(times[0]);
    if ((a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0)) {
      if (b == 0.0) {
        crossings.push_back(times[i]);
      } else {
        crossings.push_back(times[i - 1] + (times[i] - times[i - 1]) * a / (a - b));
      }
    }
  }
  // A value that lands exactly on zero is counted once.
  crossings.erase(std::unique(crossings.begin(), crossings.end()), crossings.end());
  if (crossings.size() < 2) throw InputError("fewer than two zero crossings");
  std::vector<double> index(crossings.size());
  std::iota(index.begin(), index.end(), 0.0);
  const double half_period = fit_slope(index, crossings);
  return std::acos(-1.0) / half_period;
}

OrderStudy trotter_order_study(const ModelParams& params, const GridSpec& grid, const LatticeState& psi0,
                               TrotterOrder order, double t, const std::vector<double>& dts,
                               const PropagatorOptions& options) {
  LatticeState exact = psi0;
  exact_evolve(exact, params, grid, t);
  const auto ref = exact.amplitudes();

  const auto op = std::make_shared<const SplitOperator>(params, grid, options);
  OrderStudy study;
  study.order = order;
  study.dts = dts;
  for (double dt : dts) {
    LatticeState s = psi0;
    TrotterEvolution(op, order, dt).advance(s, t);
    const auto a = s.amplitudes();
    double err = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) err += std::norm(a[i] - ref[i]);
    study.errors.push_back(std::sqrt(err));
  }
  const bool all_positive = std::all_of(study.errors.begin(), study.errors.end(), [](double e) { return e > 0.0; });
  study.slope = all_positive && dts.size() >= 2 ? loglog_slope(study.dts, study.errors) : 0.0;
  return study;
}

HarmonicCase harmonic_case(int n_sites, int bits, int k, double q_max, double width, double displacement) {
  HarmonicCase hc;
  hc.params.n_sites = n_sites;
  hc.params.beta = 0.0;
  hc.grid.bits_per_site = bits;
  hc.grid.q_max = q_max;
  hc.weights = weights(n_sites, k);
  std::vector<double> centers(static_cast<std::size_t>(n_sites), grid_center(hc.grid));
  const double two_pi = 2.0 * std::acos(-1.0);
  for (int j = 0; j < n_sites; ++j) {
    centers[j] += displacement * std::cos(two_pi * static_cast<double>((j * k) % n_sites) / n_sites);
  }
  hc.psi0 = init_product_gaussian(hc.params, hc.grid, width, centers);
  return hc;
}

TrotterCase trotter_case() {
  TrotterCase c;
  c.params.n_sites = 2;
  c.params.beta = 1.0;
  c.grid.bits_per_site = 3;
  c.grid.q_max = 1.6;
  c.psi0 = init_product_gaussian(c.params, c.grid, 0.7);
  return c;
}

HarmonicCase default_harmonic_case() { return harmonic_case(2, 4, 1, 4.0, 0.6, 0.8); }

Complex reference_correlator(const HarmonicCase& hc, const TimeEvolution& evolution, double t) {
  std::array<Complex, 4> parts;
  for (std::size_t i = 0; i < 4; ++i) {
    parts[i] = quadrature_correlator(kAllCorrelatorKinds[i], t, hc.psi0, evolution, hc.grid, hc.weights);
  }
  return reconstruct_correlator(parts[0], parts[1], parts[2], parts[3]);
}

CorrelatorEstimate reconstructed_estimate(const HarmonicCase& hc, const TimeEvolution& evolution, EstimatorKind kind,
                                          double t, double h) {
  CorrelatorSeries series(evolution, hc.grid, hc.weights, hc.psi0);
  SeriesOptions opt;
  opt.times = {t};
  opt.estimators = {kind};
  opt.h = h;
  return series.run(opt).front().correlator;
}

BiasStudy estimator_bias_study(const HarmonicCase& hc, const TimeEvolution& evolution, EstimatorKind kind, double t,
                               const std::vector<double>& hs) {
  const Complex ref = reference_correlator(hc, evolution, t);
  BiasStudy study;
  study.estimator = kind;
  study.hs = hs;
  for (double h : hs) study.biases.push_back(std::abs(reconstructed_estimate(hc, evolution, kind, t, h).value - ref));
  study.slope = loglog_slope(study.hs, study.biases);
  return study;
}

ShotNoiseStudy shot_noise_study(const GeneratingEvaluator& f, double h, const std::vector<int>& shots, int n_seeds,
                                std::uint64_t base_seed) {
  if (n_seeds < 2) throw InputError("shot_noise_study needs at least two seeds");
  const auto pts = stencil(EstimatorKind::kRect, h);
  std::vector<Complex> exact;
  for (const auto& p : pts) exact.push_back(f(p.theta1, p.theta2));

  ShotNoiseStudy study;
  study.shots = shots;
  std::vector<double> ms;
  for (std::size_t mi = 0; mi < shots.size(); ++mi) {
    const int m = shots[mi];
    std::vector<Complex> samples;
    for (int s = 0; s < n_seeds; ++s) {
      Complex est{};
      for (std::size_t pi = 0; pi < pts.size(); ++pi) {
        const auto seed = derive_seed(derive_seed(derive_seed(base_seed, mi), static_cast<std::uint64_t>(s)), pi);
        est += pts[pi].weight * shot_sample(exact[pi], m, seed);
      }
      samples.push_back(est);
    }
    Complex mean{};
    for (auto v : samples) mean += v;
    mean /= static_cast<double>(samples.size());
    double var = 0.0;
    for (auto v : samples) var += std::norm(v - mean);
    var /= static_cast<double>(samples.size() - 1);
    const double sd = std::sqrt(var);
    const double model = stat_error_model(h, m);
    study.stds.push_back(sd);
    study.model.push_back(model);
    study.worst_ratio = std::max(study.worst_ratio, std::max(sd / model, model / sd));
    ms.push_back(static_cast<double>(m));
  }
  if (ms.size() >= 2) study.slope = loglog_slope(ms, study.stds);
  return study;
}

double factorization_deviation(int n_sites, int bits, int k, double theta1, double theta2, std::uint64_t seed) {
  GridSpec grid;
  grid.bits_per_site = bits;
  grid.q_max = 2.0;
  const auto w = weights(n_sites, k);
  LatticeState psi(SiteLayout{n_sites, bits});
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (auto& a : psi.amplitudes()) a = {gauss(rng), gauss(rng)};
  psi.normalize();

  LatticeState ab = psi;
  apply_exp_quadrature(ab, grid, w, Quadrature::kSin, theta2);
  apply_exp_quadrature(ab, grid, w, Quadrature::kCos, theta1);
  LatticeState ba = psi;
  apply_exp_quadrature(ba, grid, w, Quadrature::kCos, theta1);
  apply_exp_quadrature(ba, grid, w, Quadrature::kSin, theta2);

  const auto dc = quadrature_diagonal(grid, w, Quadrature::kCos);
  const auto ds = quadrature_diagonal(grid, w, Quadrature::kSin);
  LatticeState joint = psi;
  apply_diagonal_phase(joint, [&](std::uint64_t x) { return theta1 * dc[x] + theta2 * ds[x]; });

  double dev = 0.0;
  const auto a = ab.amplitudes();
  const auto b = ba.amplitudes();
  const auto c = joint.amplitudes();
  for (std::size_t i = 0; i < a.size(); ++i) dev = std::max({dev, std::abs(a[i] - b[i]), std::abs(a[i] - c[i])});
  return dev;
}

namespace {

std::string format_values(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(4);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

struct SlopeWindow {
  double lo;
  double hi;
};

CheckResult slope_check(std::string name, double slope, SlopeWindow w, const std::vector<double>& ys) {
  std::ostringstream os;
  os.precision(4);
  os << "slope " << slope << " expected [" << w.lo << ", " << w.hi << "]; values " << format_values(ys);
  return {std::move(name), std::isfinite(slope) && slope >= w.lo && slope <= w.hi, os.str()};
}

template <typename F>
CheckResult guarded(const std::string& name, F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {name, false, std::string("error: ") + e.what()};
  }
}

}  // namespace

const std::vector<std::string>& validation_check_names() {
  static const std::vector<std::string> names = {
      "table1_regression",     "qubits_total_formula",  "quadrature_commutation", "quadrature_factorization",
      "trotter_order_first",   "trotter_order_second",  "trotter_order_suzuki4",  "trotter_vs_oracle",
      "unitarity",             "f00_normalization",     "estimator_bias_rect",    "estimator_bias_central",
      "estimator_bias_richardson", "depth_linearity",   "uncompute_symmetry",
  };
  return names;
}

std::vector<CheckResult> run_validation_suite(const RunConfig& config) {
  PropagatorOptions popt;
  popt.inject_dft_sign_fault = config.inject_dft_sign_fault;
  std::vector<CheckResult> out;

  out.push_back(guarded("table1_regression", [] {
    const std::uint64_t expected[3][2] = {{60, 144}, {108, 288}, {204, 576}};
    const auto rows = table_one_rows();
    bool ok = rows.size() == 3;
    std::ostringstream os;
    for (std::size_t i = 0; i < rows.size() && i < 3; ++i) {
      ok = ok && rows[i].serial == expected[i][0] && rows[i].parallel == expected[i][1];
      os << "N=" << rows[i].n_sites << ": " << rows[i].serial << "/" << rows[i].parallel << "; ";
    }
    return CheckResult{"table1_regression", ok, os.str()};
  }));

  out.push_back(guarded("qubits_total_formula", [] {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> dn(2, 64);
    std::uniform_int_distribution<int> db(2, 16);
    for (int i = 0; i < 10; ++i) {
      const int n = dn(rng);
      const int b = db(rng);
      const auto got = qubits_total_formula(n, b);
      const auto want = static_cast<std::uint64_t>((3 * n * b + 1) / 2);
      if (got != want) {
        return CheckResult{"qubits_total_formula", false,
                           "N=" + std::to_string(n) + " b=" + std::to_string(b) + " gave " + std::to_string(got)};
      }
    }
    return CheckResult{"qubits_total_formula", true, "10 random (N, b) pairs match ceil(3 N b / 2)"};
  }));

  out.push_back(guarded("quadrature_commutation", [] {
    double worst = 0.0;
    for (int n : {2, 3, 4}) {
      for (int b : {2, 3}) {
        GridSpec g;
        g.bits_per_site = b;
        g.q_max = 2.0;
        for (int k = 0; k < n; ++k) worst = std::max(worst, commutator_norm(n, k, g));
      }
    }
    return CheckResult{"quadrature_commutation", worst == 0.0, "max |[Q_c, Q_s]| = " + std::to_string(worst)};
  }));

  out.push_back(guarded("quadrature_factorization", [] {
    double worst = 0.0;
    std::uint64_t seed = 11;
    for (int n : {2, 3, 4}) {
      for (int b : {2, 3}) {
        for (int k = 0; k < n; ++k) worst = std::max(worst, factorization_deviation(n, b, k, 0.37, -0.81, seed++));
      }
    }
    std::ostringstream os;
    os << "max deviation " << worst;
    return CheckResult{"quadrature_factorization", worst <= 1e-12, os.str()};
  }));

  const std::vector<double> dts = {0.2, 0.1, 0.05, 0.025};
  const std::pair<TrotterOrder, SlopeWindow> orders[] = {{TrotterOrder::kFirst, {0.7, 1.3}},
                                                         {TrotterOrder::kSecond, {1.7, 2.3}},
                                                         {TrotterOrder::kSuzuki4, {3.5, 4.5}}};
  for (const auto& [order, window] : orders) {
    const std::string name = "trotter_order_" + std::string(to_string(order));
    out.push_back(guarded(name, [&, order = order, window = window] {
      const auto c = trotter_case();
      const auto study = trotter_order_study(c.params, c.grid, c.psi0, order, 1.0, dts, popt);
      return slope_check(name, study.slope, window, study.errors);
    }));
  }

  out.push_back(guarded("trotter_vs_oracle", [&] {
    const auto c = trotter_case();
    const auto study = trotter_order_study(c.params, c.grid, c.psi0, TrotterOrder::kSuzuki4, 1.0, {0.01}, popt);
    std::ostringstream os;
    os << "suzuki4 dt=0.01 state error " << study.errors[0] << " (tolerance 1e-5)";
    return CheckResult{"trotter_vs_oracle", study.errors[0] <= 1e-5, os.str()};
  }));

  out.push_back(guarded("unitarity", [&] {
    ModelParams p;
    p.n_sites = 3;
    p.beta = 1.0;
    GridSpec g;
    g.bits_per_site = 4;
    g.q_max = default_q_max(p, 4);
    auto s = init_product_gaussian(p, g, default_gaussian_width(p));
    SplitOperator op(p, g, popt);
    op.evolve_fused(s, TrotterOrder::kSecond, 0.01, 1000);
    const double drift = std::abs(s.norm() - 1.0);
    std::ostringstream os;
    os << "norm drift after 1000 steps " << drift;
    return CheckResult{"unitarity", drift <= 1e-10, os.str()};
  }));

  out.push_back(guarded("f00_normalization", [&] {
    const auto hc = default_harmonic_case();
    auto op = std::make_shared<const SplitOperator>(hc.params, hc.grid, popt);
    TrotterEvolution evo(op, TrotterOrder::kSecond, 0.01);
    double worst = 0.0;
    for (double t : {0.0, 0.13, 0.5, 1.07, 2.0}) {
      for (auto kind : kAllCorrelatorKinds) {
        worst = std::max(worst, std::abs(generating_value(kind, 0.0, 0.0, t, hc.psi0, evo, hc.grid, hc.weights) - 1.0));
      }
    }
    std::ostringstream os;
    os << "max |F(0,0) - 1| = " << worst;
    return CheckResult{"f00_normalization", worst <= 1e-10, os.str()};
  }));

  {
    const std::vector<double> hs = {0.4, 0.2, 0.1, 0.05};
    const std::pair<EstimatorKind, SlopeWindow> ests[] = {{EstimatorKind::kRect, {0.7, 1.3}},
                                                          {EstimatorKind::kCentral, {1.6, 2.4}},
                                                          {EstimatorKind::kRichardson, {1.6, 2.4}}};
    for (const auto& [kind, window] : ests) {
      const std::string name = "estimator_bias_" + std::string(to_string(kind));
      out.push_back(guarded(name, [&, kind = kind, window = window] {
        const auto hc = default_harmonic_case();
        ExactEvolution evo(hc.params, hc.grid);
        const auto study = estimator_bias_study(hc, evo, kind, 1.0, hs);
        return slope_check(name, study.slope, window, study.biases);
      }));
    }
  }

  out.push_back(guarded("depth_linearity", [] {
    const auto one = build_trotter_circuit(4, 3, 6, TrotterOrder::kSecond, 1);
    const auto d1 = one.depth();
    const auto g1 = one.counts().total();
    for (int n : {2, 5, 12}) {
      const auto ir = build_trotter_circuit(4, 3, 6, TrotterOrder::kSecond, n);
      if (ir.depth() != static_cast<std::uint64_t>(n) * d1 || ir.counts().total() != static_cast<std::uint64_t>(n) * g1) {
        return CheckResult{"depth_linearity", false, "n=" + std::to_string(n) + " breaks linearity"};
      }
    }
    return CheckResult{"depth_linearity", true, "depth(n) = n * " + std::to_string(d1)};
  }));

  out.push_back(guarded("uncompute_symmetry", [] {
    const bool ok = verify_uncompute_symmetry(build_trotter_circuit(5, 3, 6, TrotterOrder::kSecond, 2));
    return CheckResult{"uncompute_symmetry", ok, ok ? "every block has its mirror" : "unmatched block"};
  }));

  return out;
}

}  // namespace fputq
