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

#include "nqsfid/sampling.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nqsfid/parallel.hpp"

namespace nqsfid {

std::string_view to_string(SampleProvenance provenance) {
  return provenance == SampleProvenance::exact ? "exact" : "markov-chain";
}

double metropolis_acceptance(double log_magnitude_from,
                             double log_magnitude_to) {
  if (log_magnitude_to == -std::numeric_limits<double>::infinity()) {
    return 0.0;
  }
  const double log_ratio = 2.0 * (log_magnitude_to - log_magnitude_from);
  return log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
}

SampleBatch sample_exact_autoregressive(const Ansatz& ansatz, std::size_t n,
                                        RandomStream& rng) {
  const auto* ar = dynamic_cast<const AutoregressiveAnsatz*>(&ansatz);
  if (ar == nullptr || !ansatz.is_normalized()) {
    throw std::invalid_argument(
        "sample_exact_autoregressive requires a normalized autoregressive "
        "ansatz");
  }
  if (n == 0) throw std::invalid_argument("sample count must be positive");

  const int num_sites = ansatz.num_sites();
  SampleBatch batch;
  batch.source = &ansatz;
  batch.provenance = SampleProvenance::exact;
  batch.configurations.reserve(n);
  batch.log_amplitudes.reserve(n);

  auto cursor = ar->make_cursor();
  for (std::size_t k = 0; k < n; ++k) {
    cursor->reset();
    SpinConfiguration config(num_sites);
    for (int i = 0; i < num_sites; ++i) {
      const double p_up = std::exp(cursor->current().log_probabilities[0]);
      const bool up = rng.uniform() < p_up;
      config.set(i, up);
      cursor->advance(up);
    }
    batch.configurations.push_back(config);
    batch.log_amplitudes.push_back(cursor->log_amplitude());
  }
  return batch;
}

namespace {

struct ChainResult {
  std::vector<SpinConfiguration> configurations;
  std::vector<LogAmplitude> log_amplitudes;
  std::uint64_t accepted = 0;
  std::uint64_t total = 0;
};

SpinConfiguration random_start(const Ansatz& ansatz, RandomStream& rng) {
  constexpr int kMaxAttempts = 100000;
  const int num_sites = ansatz.num_sites();
  const std::uint64_t mask =
      num_sites == 64 ? ~std::uint64_t{0}
                      : (std::uint64_t{1} << num_sites) - 1;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const auto start = SpinConfiguration::from_index(rng() & mask, num_sites);
    if (std::isfinite(ansatz.log_amplitude(start).real())) return start;
  }
  throw std::runtime_error(
      "sample_metropolis: no nonzero-amplitude start configuration found");
}

ChainResult run_chain(const Ansatz& ansatz, std::size_t n,
                      const ChainSettings& settings, RandomStream rng) {
  const int num_sites = ansatz.num_sites();
  const int steps =
      settings.steps_per_sweep > 0 ? settings.steps_per_sweep : num_sites;

  ChainResult out;
  out.configurations.reserve(n);
  out.log_amplitudes.reserve(n);
  auto walker = ansatz.make_walker(random_start(ansatz, rng));

  auto sweep = [&] {
    for (int step = 0; step < steps; ++step) {
      const int site = static_cast<int>(rng.below(num_sites));
      const double proposed = walker->propose(site);
      const double p = metropolis_acceptance(walker->log_magnitude(), proposed);
      ++out.total;
      if (p >= 1.0 || (p > 0.0 && rng.uniform() < p)) {
        walker->accept(site);
        ++out.accepted;
      }
    }
  };

  for (int s = 0; s < settings.burn_in_sweeps; ++s) sweep();
  for (std::size_t k = 0; k < n; ++k) {
    for (int s = 0; s < settings.sweeps_per_sample; ++s) sweep();
    out.configurations.push_back(walker->config());
    out.log_amplitudes.push_back(ansatz.log_amplitude(walker->config()));
  }
  return out;
}

}  // namespace

SampleBatch sample_metropolis(const Ansatz& ansatz, std::size_t n,
                              const ChainSettings& settings,
                              RandomStream& rng) {
  if (n == 0) throw std::invalid_argument("sample count must be positive");
  if (settings.chains < 1 || settings.burn_in_sweeps < 0 ||
      settings.sweeps_per_sample < 1 || settings.steps_per_sweep < 0) {
    throw std::invalid_argument("sample_metropolis: invalid chain settings");
  }
  const std::size_t chains =
      std::min<std::size_t>(static_cast<std::size_t>(settings.chains), n);
  const RandomStream base(rng());

  std::vector<ChainResult> results(chains);
  parallel_for(chains, settings.workers, [&](std::size_t c) {
    const std::size_t share = n / chains + (c < n % chains ? 1 : 0);
    results[c] = run_chain(ansatz, share, settings, base.split(c));
  });

  SampleBatch batch;
  batch.source = &ansatz;
  batch.provenance = SampleProvenance::markov_chain;
  batch.configurations.reserve(n);
  batch.log_amplitudes.reserve(n);
  for (auto& r : results) {
    batch.configurations.insert(batch.configurations.end(),
                                r.configurations.begin(),
                                r.configurations.end());
    batch.log_amplitudes.insert(batch.log_amplitudes.end(),
                                r.log_amplitudes.begin(),
                                r.log_amplitudes.end());
    batch.accepted_steps += r.accepted;
    batch.total_steps += r.total;
  }
  batch.acceptance_rate =
      batch.total_steps == 0
          ? 1.0
          : static_cast<double>(batch.accepted_steps) /
                static_cast<double>(batch.total_steps);
  return batch;
}

SampleBatch sample_auto(const Ansatz& ansatz, std::size_t n,
                        const ChainSettings& settings, RandomStream& rng) {
  if (ansatz.is_normalized() &&
      dynamic_cast<const AutoregressiveAnsatz*>(&ansatz) != nullptr) {
    return sample_exact_autoregressive(ansatz, n, rng);
  }
  return sample_metropolis(ansatz, n, settings, rng);
}

}  // namespace nqsfid
