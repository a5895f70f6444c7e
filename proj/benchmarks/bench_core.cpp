// Copyright 2026 The crmshadow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include <numbers>

#include "crmshadow/channels.hpp"
#include "crmshadow/char_function.hpp"
#include "crmshadow/clifford.hpp"
#include "crmshadow/estimators.hpp"
#include "crmshadow/variance.hpp"

namespace crmshadow {
namespace {

void BM_CharFunctionPure(benchmark::State &state) {
  int n = static_cast<int>(state.range(0));
  Vector s = magic_cluster_state(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(char_function(s));
  }
}
BENCHMARK(BM_CharFunctionPure)->DenseRange(4, 10, 2);

void BM_TwistedCrossChar(benchmark::State &state) {
  int n = static_cast<int>(state.range(0));
  Vector s = magic_cluster_state(n);
  CharFunction xi = char_function(s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(twisted_cross_char(xi, xi));
  }
}
BENCHMARK(BM_TwistedCrossChar)->DenseRange(4, 10, 2);

void BM_CliffordVarianceDepolarizing(benchmark::State &state) {
  int n = static_cast<int>(state.range(0));
  Vector s = s_nk_state(n, n, std::numbers::pi / 4);
  QuantumState sigma = QuantumState::pure(s);
  QuantumState rho = apply_noise(Depolarizing{0.01}, sigma);
  Operator o = fidelity_observable(s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_variances(Ensemble::Clifford, o, rho, sigma));
  }
}
BENCHMARK(BM_CliffordVarianceDepolarizing)->DenseRange(3, 9, 2)->Unit(benchmark::kMillisecond);

void BM_CliffordVarianceCoherent(benchmark::State &state) {
  int n = static_cast<int>(state.range(0));
  Philox rng(1, 0);
  Vector s = s_nk_state(n, n / 2, std::numbers::pi / 4);
  QuantumState sigma = QuantumState::pure(s);
  QuantumState rho = apply_noise(random_local_rotation(n, 0.01, rng), sigma);
  Operator o = fidelity_observable(s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_variances(Ensemble::Clifford, o, rho, sigma));
  }
}
BENCHMARK(BM_CliffordVarianceCoherent)->DenseRange(3, 9, 2)->Unit(benchmark::kMillisecond);

void BM_PauliEnsembleVariance(benchmark::State &state) {
  int n = static_cast<int>(state.range(0));
  Vector s = magic_cluster_state(n);
  QuantumState sigma = QuantumState::pure(s);
  QuantumState rho = apply_noise(Depolarizing{0.01}, sigma);
  Operator o = fidelity_observable(s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_variances(Ensemble::LocalPauli, o, rho, sigma));
  }
}
BENCHMARK(BM_PauliEnsembleVariance)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_SampleClifford(benchmark::State &state) {
  int n = static_cast<int>(state.range(0));
  Philox rng(2, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_clifford(n, rng));
  }
}
BENCHMARK(BM_SampleClifford)->RangeMultiplier(2)->Range(1, 16);

void BM_ApplyClifford(benchmark::State &state) {
  int n = static_cast<int>(state.range(0));
  Philox rng(3, 0);
  CliffordElement u = sample_clifford(n, rng);
  Vector v = haar_state(n, rng);
  for (auto _ : state) {
    u.apply(v);
    benchmark::DoNotOptimize(v.data());
  }
}
BENCHMARK(BM_ApplyClifford)->DenseRange(4, 12, 4);

void BM_CrmRound(benchmark::State &state) {
  int n = static_cast<int>(state.range(0));
  Vector g = ghz_state(n);
  QuantumState sigma = QuantumState::pure(g);
  QuantumState rho = apply_noise(Depolarizing{0.01}, sigma);
  Operator o = fidelity_observable(g);
  EstimatorConfig cfg{Ensemble::Clifford, EstimatorMode::Crm, 100, 16, 1};
  Philox rng(4, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_protocol(rho, o, cfg, &sigma, rng));
  }
}
BENCHMARK(BM_CrmRound)->DenseRange(2, 8, 3)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace crmshadow

BENCHMARK_MAIN();
