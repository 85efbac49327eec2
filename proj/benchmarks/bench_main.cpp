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

#include <benchmark/benchmark.h>

#include <memory>

#include "fputq/correlator.hpp"
#include "fputq/propagator.hpp"
#include "fputq/resources.hpp"
#include "fputq/validation.hpp"

namespace {

using namespace fputq;

struct Chain {
  ModelParams params;
  GridSpec grid;
  LatticeState state;
};

Chain make_chain(int n, int b) {
  Chain c;
  c.params.n_sites = n;
  c.params.beta = 1.0;
  c.grid.bits_per_site = b;
  c.grid.q_max = default_q_max(c.params, b);
  c.state = init_product_gaussian(c.params, c.grid, default_gaussian_width(c.params));
  return c;
}

// Args: N, b.
void BM_KineticStep(benchmark::State& st) {
  auto c = make_chain(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  const SplitOperator op(c.params, c.grid);
  for (auto _ : st) op.kinetic_step(c.state, 0.005);
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(c.state.size()));
}
BENCHMARK(BM_KineticStep)->Args({2, 6})->Args({3, 5})->Args({4, 4})->Args({4, 5})->Unit(benchmark::kMillisecond);

void BM_PotentialStep(benchmark::State& st) {
  auto c = make_chain(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  const SplitOperator op(c.params, c.grid);
  for (auto _ : st) op.potential_step(c.state, 0.01);
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(c.state.size()));
}
BENCHMARK(BM_PotentialStep)->Args({3, 5})->Args({4, 5})->Unit(benchmark::kMillisecond);

// Args: N, b, order (0 first, 1 second, 2 suzuki4).
void BM_TrotterStep(benchmark::State& st) {
  auto c = make_chain(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  const SplitOperator op(c.params, c.grid);
  const auto order = static_cast<TrotterOrder>(st.range(2));
  for (auto _ : st) op.evolve_fused(c.state, order, 0.01, 1);
}
BENCHMARK(BM_TrotterStep)->Args({3, 5, 1})->Args({3, 5, 2})->Args({4, 5, 1})->Unit(benchmark::kMillisecond);

void BM_GeneratingValue(benchmark::State& st) {
  const auto hc = default_harmonic_case();
  auto op = std::make_shared<const SplitOperator>(hc.params, hc.grid);
  const TrotterEvolution evo(op, TrotterOrder::kSecond, 0.01);
  for (auto _ : st) {
    benchmark::DoNotOptimize(generating_value(CorrelatorKind::kCC, 0.05, 0.05, 1.0, hc.psi0, evo, hc.grid, hc.weights));
  }
}
BENCHMARK(BM_GeneratingValue)->Unit(benchmark::kMillisecond);

void BM_DenseSpectrum(benchmark::State& st) {
  ModelParams p;
  p.n_sites = 2;
  p.beta = 1.0;
  GridSpec g;
  g.bits_per_site = static_cast<int>(st.range(0));
  g.q_max = 2.0;
  for (auto _ : st) benchmark::DoNotOptimize(DenseSpectrum(p, g).energies().size());
}
BENCHMARK(BM_DenseSpectrum)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

// Args: N, b, n_steps.
void BM_BuildTrotterCircuit(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0)), b = static_cast<int>(st.range(1));
  for (auto _ : st) {
    benchmark::DoNotOptimize(build_trotter_circuit(n, b, 2 * b, TrotterOrder::kSecond, static_cast<int>(st.range(2))));
  }
}
BENCHMARK(BM_BuildTrotterCircuit)->Args({8, 6, 1})->Args({32, 6, 1})->Args({8, 6, 10})->Unit(benchmark::kMillisecond);

void BM_CircuitDepth(benchmark::State& st) {
  const auto ir = build_trotter_circuit(static_cast<int>(st.range(0)), 6, 12, TrotterOrder::kSecond, 1);
  for (auto _ : st) benchmark::DoNotOptimize(ir.depth());
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(ir.gates().size()));
}
BENCHMARK(BM_CircuitDepth)->Arg(8)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_ResourceReport(benchmark::State& st) {
  for (auto _ : st) {
    benchmark::DoNotOptimize(resource_report(static_cast<int>(st.range(0)), 6, 12, TrotterOrder::kSecond, 1.0, 0.01));
  }
}
BENCHMARK(BM_ResourceReport)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
