// Copyright 2026 The nqsfid Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include <cstdint>
#include <memory>

#include "nqsfid/ansatz.hpp"
#include "nqsfid/estimator.hpp"
#include "nqsfid/experiment.hpp"
#include "nqsfid/oracle.hpp"
#include "nqsfid/sampling.hpp"

namespace nqsfid {
namespace {

Architecture symmetric() {
  Architecture a;
  a.weight_init = WeightInit::symmetric;
  return a;
}

void BM_LogAmplitude(benchmark::State& state, AnsatzKind kind) {
  const int l = static_cast<int>(state.range(0));
  auto ansatz = make_ansatz(init_random(kind, l, 1, symmetric()));
  RandomStream rng(2);
  const std::uint64_t mask = (std::uint64_t{1} << l) - 1;
  for (auto _ : state) {
    const auto s = SpinConfiguration::from_index(rng() & mask, l);
    benchmark::DoNotOptimize(ansatz->log_amplitude(s));
  }
}
BENCHMARK_CAPTURE(BM_LogAmplitude, rbm, AnsatzKind::rbm)->Arg(12)->Arg(24);
BENCHMARK_CAPTURE(BM_LogAmplitude, arnn, AnsatzKind::arnn)->Arg(12)->Arg(24);

void BM_ExactSampler(benchmark::State& state) {
  const int l = static_cast<int>(state.range(0));
  auto arnn = make_ansatz(init_random(AnsatzKind::arnn, l, 1, symmetric()));
  RandomStream rng(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_exact_autoregressive(*arnn, 1024, rng));
  }
  state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_ExactSampler)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_MetropolisSweeps(benchmark::State& state) {
  const int l = static_cast<int>(state.range(0));
  auto rbm = make_ansatz(init_random(AnsatzKind::rbm, l, 1, symmetric()));
  RandomStream rng(4);
  ChainSettings settings;
  settings.burn_in_sweeps = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_metropolis(*rbm, 1024, settings, rng));
  }
  state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_MetropolisSweeps)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_GeneralEstimate(benchmark::State& state) {
  auto pair = generate_state_pair(AnsatzKind::rbm, 12, 1.0, 5, symmetric());
  RandomStream rng(6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_single_estimate(
        pair, EstimatorMode::general, 4096, ChainSettings{}, rng));
  }
}
BENCHMARK(BM_GeneralEstimate)->Unit(benchmark::kMillisecond);

void BM_ExactSummary(benchmark::State& state) {
  const int l = static_cast<int>(state.range(0));
  auto pair = generate_state_pair(AnsatzKind::rbm, l, 1.0, 7, symmetric(),
                                  false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_summary(*pair.psi, *pair.phi));
  }
}
BENCHMARK(BM_ExactSummary)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace nqsfid

BENCHMARK_MAIN();
