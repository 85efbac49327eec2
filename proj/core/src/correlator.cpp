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

#include "fputq/correlator.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <random>
#include <string>
#include <tuple>

#include "fputq/errors.hpp"

namespace fputq {

std::string_view to_string(CorrelatorKind kind) {
  switch (kind) {
    case CorrelatorKind::kCC: return "cc";
    case CorrelatorKind::kSS: return "ss";
    case CorrelatorKind::kCS: return "cs";
    case CorrelatorKind::kSC: return "sc";
  }
  return "?";
}

Quadrature later_quadrature(CorrelatorKind kind) {
  return (kind == CorrelatorKind::kCC || kind == CorrelatorKind::kCS) ? Quadrature::kCos : Quadrature::kSin;
}

Quadrature earlier_quadrature(CorrelatorKind kind) {
  return (kind == CorrelatorKind::kCC || kind == CorrelatorKind::kSC) ? Quadrature::kCos : Quadrature::kSin;
}

std::string_view to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::kRect: return "rect";
    case EstimatorKind::kCentral: return "central";
    case EstimatorKind::kRichardson: return "richardson";
  }
  return "?";
}

EstimatorKind parse_estimator(std::string_view text) {
  if (text == "rect") return EstimatorKind::kRect;
  if (text == "central") return EstimatorKind::kCentral;
  if (text == "richardson") return EstimatorKind::kRichardson;
  throw InputError("unknown estimator '" + std::string(text) + "' (expected rect, central or richardson)");
}

namespace {

void require_positive_step(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InputError("finite-difference step h must be positive");
}

void add_point(std::vector<StencilPoint>& pts, double t1, double t2, double weight) {
  for (auto& p : pts) {
    if (p.theta1 == t1 && p.theta2 == t2) {
      p.weight += weight;
      return;
    }
  }
  pts.push_back({t1, t2, weight});
}

void add_rect(std::vector<StencilPoint>& pts, double h, double scale) {
  const double w = scale / (h * h);
  add_point(pts, h, h, -w);
  add_point(pts, h, 0.0, w);
  add_point(pts, 0.0, h, w);
  add_point(pts, 0.0, 0.0, -w);
}

}  // namespace

std::vector<StencilPoint> stencil(EstimatorKind kind, double h) {
  require_positive_step(h);
  std::vector<StencilPoint> pts;
  switch (kind) {
    case EstimatorKind::kRect:
      add_rect(pts, h, 1.0);
      break;
    case EstimatorKind::kCentral: {
      const double w = 1.0 / (4.0 * h * h);
      add_point(pts, h, h, -w);
      add_point(pts, h, -h, w);
      add_point(pts, -h, h, w);
      add_point(pts, -h, -h, -w);
      break;
    }
    case EstimatorKind::kRichardson:
      add_rect(pts, 0.5 * h, 2.0);
      add_rect(pts, h, -1.0);
      break;
  }
  return pts;
}

double bias_bound(EstimatorKind kind, double h, double q_max) {
  require_positive_step(h);
  if (kind == EstimatorKind::kRect) return h * q_max * q_max * q_max;
  return h * h * q_max * q_max * q_max * q_max;
}

CorrelatorEstimate estimate(EstimatorKind kind, const GeneratingEvaluator& f, double t, double h, double q_max) {
  CorrelatorEstimate out;
  out.time_lag = t;
  out.estimator = kind;
  out.h = h;
  out.bias_bound = bias_bound(kind, h, q_max);
  for (const auto& p : stencil(kind, h)) out.value += p.weight * f(p.theta1, p.theta2);
  return out;
}

CorrelatorEstimate rect_estimator(const GeneratingEvaluator& f, double t, double h, double q_max) {
  return estimate(EstimatorKind::kRect, f, t, h, q_max);
}

CorrelatorEstimate central_estimator(const GeneratingEvaluator& f, double t, double h, double q_max) {
  return estimate(EstimatorKind::kCentral, f, t, h, q_max);
}

CorrelatorEstimate richardson_estimator(const GeneratingEvaluator& f, double t, double h, double q_max) {
  return estimate(EstimatorKind::kRichardson, f, t, h, q_max);
}

Complex reconstruct_correlator(Complex cc, Complex ss, Complex cs, Complex sc) {
  return (cc - ss) - Complex(0.0, 1.0) * (cs + sc);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

namespace {

double outcome_probability(double component) {
  constexpr double kTol = 1e-9;
  const double p = 0.5 * (1.0 + component);
  if (!(p >= -kTol && p <= 1.0 + kTol)) {
    throw InputError("Hadamard-test probability " + std::to_string(p) + " outside [0, 1]");
  }
  return std::clamp(p, 0.0, 1.0);
}

double sample_component(double component, int shots, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::binomial_distribution<long long> draw(shots, outcome_probability(component));
  const double p_hat = static_cast<double>(draw(engine)) / shots;
  return 2.0 * p_hat - 1.0;
}

}  // namespace

Complex shot_sample(Complex value, int shots, std::uint64_t seed) {
  if (shots < 1) throw InputError("shot count must be >= 1");
  // Validate both components before drawing anything.
  outcome_probability(value.real());
  outcome_probability(value.imag());
  return {sample_component(value.real(), shots, derive_seed(seed, 0)),
          sample_component(value.imag(), shots, derive_seed(seed, 1))};
}

double stat_error_model(double h, int shots) {
  require_positive_step(h);
  if (shots < 1) throw InputError("shot count must be >= 1");
  return 2.0 / (h * h * std::sqrt(static_cast<double>(shots)));
}

std::uint64_t execution_count(std::uint64_t n_times, std::uint64_t shots) { return 4 * n_times * shots; }

namespace {

void check_time(const TimeEvolution& evolution, double t) {
  if (evolution.time_step() > 0.0) steps_for_duration(t, evolution.time_step());
  else if (t < 0.0) throw InputError("time lag must be non-negative");
}

}  // namespace

Complex generating_value(CorrelatorKind kind, double theta1, double theta2, double t, const LatticeState& psi0,
                         const TimeEvolution& evolution, const GridSpec& grid, const QuadratureWeights& w) {
  check_time(evolution, t);
  LatticeState forward = psi0;
  evolution.advance(forward, t);

  LatticeState probe = psi0;
  apply_exp_quadrature(probe, grid, w, earlier_quadrature(kind), theta2);
  evolution.advance(probe, t);
  apply_exp_quadrature(probe, grid, w, later_quadrature(kind), theta1);
  return inner(forward, probe);
}

Complex quadrature_correlator(CorrelatorKind kind, double t, const LatticeState& psi0, const TimeEvolution& evolution,
                              const GridSpec& grid, const QuadratureWeights& w) {
  check_time(evolution, t);
  LatticeState forward = psi0;
  evolution.advance(forward, t);

  LatticeState probe = psi0;
  apply_quadrature(probe, grid, w, earlier_quadrature(kind));
  evolution.advance(probe, t);
  apply_quadrature(probe, grid, w, later_quadrature(kind));
  return inner(forward, probe);
}

CorrelatorSeries::CorrelatorSeries(const TimeEvolution& evolution, const GridSpec& grid, QuadratureWeights w,
                                   LatticeState psi0)
    : evolution_(evolution), grid_(grid), weights_(std::move(w)), psi0_(std::move(psi0)) {
  if (psi0_.layout().n_sites != static_cast<int>(weights_.w_cos.size()) ||
      psi0_.layout().bits_per_site != grid_.bits_per_site) {
    throw ShapeError("initial state does not match the quadrature weights or grid");
  }
  q_max_ = std::max(quadrature_max(grid_, weights_, Quadrature::kCos),
                    quadrature_max(grid_, weights_, Quadrature::kSin));
}

namespace {

int quad_index(Quadrature q) { return q == Quadrature::kCos ? 0 : 1; }

struct Probe {
  Quadrature quadrature;
  double theta2;
  LatticeState state;
};

}  // namespace

std::vector<SeriesPoint> CorrelatorSeries::run(const SeriesOptions& options) const {
  if (options.estimators.empty()) throw InputError("no estimator requested");
  require_positive_step(options.h);
  if (options.shots && *options.shots < 1) throw InputError("correlator.shots must be >= 1");
  for (std::size_t i = 0; i < options.times.size(); ++i) {
    check_time(evolution_, options.times[i]);
    if (i > 0 && options.times[i] < options.times[i - 1]) throw InputError("correlator times must be non-decreasing");
  }
  if (options.times.empty()) return {};

  // Union of stencil points over all requested estimators.
  std::vector<std::pair<double, double>> points;
  for (auto est : options.estimators) {
    for (const auto& p : stencil(est, options.h)) {
      const std::pair<double, double> key{p.theta1, p.theta2};
      if (std::find(points.begin(), points.end(), key) == points.end()) points.push_back(key);
    }
  }

  std::array<double, 2> qmax = {quadrature_max(grid_, weights_, Quadrature::kCos),
                                quadrature_max(grid_, weights_, Quadrature::kSin)};
  std::array<std::vector<double>, 2> diag = {quadrature_diagonal(grid_, weights_, Quadrature::kCos),
                                             quadrature_diagonal(grid_, weights_, Quadrature::kSin)};

  // Probe states exp(i theta2 Q_y) psi0 for every nonzero theta2 and both quadratures.
  std::vector<Probe> probes;
  probes.push_back({Quadrature::kCos, 0.0, psi0_});
  for (auto q : {Quadrature::kCos, Quadrature::kSin}) {
    for (const auto& [t1, t2] : points) {
      (void)t1;
      if (t2 == 0.0) continue;
      const bool seen = std::any_of(probes.begin(), probes.end(),
                                    [&](const Probe& p) { return p.theta2 == t2 && p.quadrature == q; });
      if (seen) continue;
      LatticeState s = psi0_;
      apply_diagonal_phase(s, diag[quad_index(q)], t2);
      probes.push_back({q, t2, std::move(s)});
    }
  }
  auto find_probe = [&](Quadrature q, double t2) -> const LatticeState& {
    if (t2 == 0.0) return probes.front().state;
    for (const auto& p : probes) {
      if (p.theta2 == t2 && p.quadrature == q) return p.state;
    }
    throw InputError("internal: missing probe state");
  };

  // Phase vectors exp(i theta1 Q_x) for every nonzero theta1.
  std::map<std::pair<int, double>, std::vector<Complex>> later_phases;
  for (auto q : {Quadrature::kCos, Quadrature::kSin}) {
    for (const auto& [t1, t2] : points) {
      (void)t2;
      if (t1 == 0.0) continue;
      auto key = std::make_pair(quad_index(q), t1);
      if (later_phases.count(key)) continue;
      const auto& d = diag[quad_index(q)];
      std::vector<Complex> ph(d.size());
      for (std::size_t i = 0; i < d.size(); ++i) ph[i] = std::polar(1.0, t1 * d[i]);
      later_phases.emplace(key, std::move(ph));
    }
  }

  const int jobs = std::max(1, options.jobs);
  auto advance_all = [&](double dt) {
    if (dt == 0.0) return;
    if (jobs == 1) {
      for (auto& p : probes) evolution_.advance(p.state, dt);
      return;
    }
    for (std::size_t start = 0; start < probes.size(); start += static_cast<std::size_t>(jobs)) {
      std::vector<std::future<void>> tasks;
      const std::size_t stop = std::min(probes.size(), start + static_cast<std::size_t>(jobs));
      for (std::size_t i = start; i < stop; ++i) {
        tasks.push_back(std::async(std::launch::async, [&, i] { evolution_.advance(probes[i].state, dt); }));
      }
      for (auto& t : tasks) t.get();
    }
  };

  std::vector<SeriesPoint> out;
  double current = 0.0;
  for (std::size_t ti = 0; ti < options.times.size(); ++ti) {
    const double t = options.times[ti];
    const double delta = t - current;
    if (evolution_.time_step() > 0.0) {
      const int steps = static_cast<int>(std::llround(t / evolution_.time_step())) -
                        static_cast<int>(std::llround(current / evolution_.time_step()));
      advance_all(steps * evolution_.time_step());
    } else {
      advance_all(delta);
    }
    current = t;

    const LatticeState& base = probes.front().state;
    const auto base_amps = base.amplitudes();

    // F values for this time, keyed by (kind, theta1, theta2).
    std::map<std::tuple<int, double, double>, Complex> values;
    for (std::size_t ki = 0; ki < kAllCorrelatorKinds.size(); ++ki) {
      const auto kind = kAllCorrelatorKinds[ki];
      const auto x = later_quadrature(kind);
      const auto y = earlier_quadrature(kind);
      for (std::size_t pi = 0; pi < points.size(); ++pi) {
        const auto [t1, t2] = points[pi];
        const auto probe_amps = find_probe(y, t2).amplitudes();
        Complex f{};
        if (t1 == 0.0) {
          for (std::size_t i = 0; i < base_amps.size(); ++i) f += std::conj(base_amps[i]) * probe_amps[i];
        } else {
          const auto& ph = later_phases.at({quad_index(x), t1});
          for (std::size_t i = 0; i < base_amps.size(); ++i) f += std::conj(base_amps[i]) * ph[i] * probe_amps[i];
        }
        if (options.shots) {
          const auto s = derive_seed(derive_seed(derive_seed(options.seed, ti), ki), pi);
          f = shot_sample(f, *options.shots, s);
        }
        values[{static_cast<int>(ki), t1, t2}] = f;
      }
    }

    for (auto est : options.estimators) {
      SeriesPoint sp;
      sp.time_lag = t;
      sp.estimator = est;
      for (std::size_t ki = 0; ki < kAllCorrelatorKinds.size(); ++ki) {
        const auto kind = kAllCorrelatorKinds[ki];
        const double q = std::max(qmax[quad_index(later_quadrature(kind))], qmax[quad_index(earlier_quadrature(kind))]);
        sp.parts[ki] = estimate(
            est, [&](double t1, double t2) { return values.at({static_cast<int>(ki), t1, t2}); }, t, options.h, q);
      }
      sp.correlator.time_lag = t;
      sp.correlator.estimator = est;
      sp.correlator.h = options.h;
      sp.correlator.value =
          reconstruct_correlator(sp.parts[0].value, sp.parts[1].value, sp.parts[2].value, sp.parts[3].value);
      for (const auto& p : sp.parts) sp.correlator.bias_bound += p.bias_bound;
      out.push_back(sp);
    }
  }
  return out;
}

}  // namespace fputq
