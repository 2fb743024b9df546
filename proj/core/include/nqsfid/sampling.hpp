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

#ifndef NQSFID_SAMPLING_HPP
#define NQSFID_SAMPLING_HPP

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "nqsfid/ansatz.hpp"
#include "nqsfid/configspace.hpp"
#include "nqsfid/random.hpp"

namespace nqsfid {

enum class SampleProvenance { exact, markov_chain };

std::string_view to_string(SampleProvenance provenance);

// Configurations drawn from |psi(s)|^2 / N_psi of `source`.
struct SampleBatch {
  std::vector<SpinConfiguration> configurations;
  // log psi of `source` at each configuration, bitwise equal to
  // source->log_amplitude(configurations[i]).
  std::vector<LogAmplitude> log_amplitudes;
  const Ansatz* source = nullptr;
  SampleProvenance provenance = SampleProvenance::exact;
  // Markov chains only: accepted / total proposals, burn-in included.
  double acceptance_rate = 1.0;
  std::uint64_t accepted_steps = 0;
  std::uint64_t total_steps = 0;

  std::size_t size() const { return configurations.size(); }
  int num_sites() const {
    return configurations.empty() ? 0 : configurations.front().size();
  }
};

// Metropolis-Hastings chain settings. Defaults: L single-flip proposals per
// sweep, 25 burn-in sweeps, one recorded configuration per sweep, one chain.
struct ChainSettings {
  int steps_per_sweep = 0;  // 0 means L
  int burn_in_sweeps = 25;
  int sweeps_per_sample = 1;
  int chains = 1;
  // Chains run on up to this many threads; the merged batch does not depend
  // on it.
  int workers = 1;

  friend bool operator==(const ChainSettings&, const ChainSettings&) = default;
};

// min(1, exp(2 (to - from))) for log-magnitudes; 0 if `to` is -infinity.
double metropolis_acceptance(double log_magnitude_from,
                             double log_magnitude_to);

// Exact i.i.d. sampling of an autoregressive ansatz, site by site from its
// conditionals. Throws std::invalid_argument for any other ansatz or n == 0.
SampleBatch sample_exact_autoregressive(const Ansatz& ansatz, std::size_t n,
                                        RandomStream& rng);

// Single-spin-flip Metropolis-Hastings. Each chain starts from a uniform
// random configuration (redrawn while its amplitude is zero), burns in, then
// records one configuration every `sweeps_per_sample` sweeps. The n samples
// are split across chains and concatenated in chain order.
SampleBatch sample_metropolis(const Ansatz& ansatz, std::size_t n,
                              const ChainSettings& settings,
                              RandomStream& rng);

// Exact sampling when the ansatz supports it, Metropolis otherwise.
SampleBatch sample_auto(const Ansatz& ansatz, std::size_t n,
                        const ChainSettings& settings, RandomStream& rng);

}  // namespace nqsfid

#endif  // NQSFID_SAMPLING_HPP
