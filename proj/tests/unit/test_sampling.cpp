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


#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "nqsfid/arnn.hpp"
#include "nqsfid/oracle.hpp"
#include "nqsfid/rbm.hpp"
#include "nqsfid/sampling.hpp"
#include "test_support.hpp"

namespace nqsfid {
namespace {

using testing::histogram;
using testing::TableAnsatz;
using testing::tv_distance;

AnsatzParameters zero_params(AnsatzKind kind, int l) {
  auto p = init_random(kind, l, 1);
  std::fill(p.values.begin(), p.values.end(), 0.0);
  return p;
}

std::vector<double> up_frequencies(const SampleBatch& batch) {
  std::vector<double> f(batch.num_sites(), 0.0);
  for (const auto& c : batch.configurations)
    for (int i = 0; i < c.size(); ++i) f[i] += c.is_up(i) ? 1.0 : 0.0;
  for (double& v : f) v /= static_cast<double>(batch.size());
  return f;
}

TEST(ExactSampler, ZeroWeightArnnIsUniform) {
  Arnn arnn(zero_params(AnsatzKind::arnn, 6));
  RandomStream rng(3);
  auto batch = sample_exact_autoregressive(arnn, 100000, rng);
  ASSERT_EQ(batch.size(), 100000U);
  EXPECT_EQ(batch.provenance, SampleProvenance::exact);
  for (double f : up_frequencies(batch)) EXPECT_NEAR(f, 0.5, 0.006);
}

TEST(ExactSampler, LogAmplitudesMatchSource) {
  Arnn arnn(init_random(AnsatzKind::arnn, 7, 4));
  RandomStream rng(5);
  auto batch = sample_exact_autoregressive(arnn, 200, rng);
  EXPECT_EQ(batch.source, &arnn);
  for (std::size_t k = 0; k < batch.size(); ++k) {
    auto ref = arnn.log_amplitude(batch.configurations[k]);
    EXPECT_NEAR(batch.log_amplitudes[k].real(), ref.real(), 1e-12);
    EXPECT_NEAR(std::remainder(batch.log_amplitudes[k].imag() - ref.imag(),
                               2.0 * std::numbers::pi),
                0.0, 1e-12);
  }
}

// Default nonnegative initialization: its distribution is concentrated
// enough that the sampling noise floor at n = 2e5 sits well under 0.01.
TEST(ExactSampler, TotalVariationAgainstEnumeration) {
  Arnn arnn(init_random(AnsatzKind::arnn, 8, 11));
  RandomStream rng(12);
  auto batch = sample_exact_autoregressive(arnn, 200000, rng);
  EXPECT_LT(tv_distance(histogram(batch, 8), exact_probabilities(arnn)),
            0.01);
}

TEST(ExactSampler, SameSeedSameBatch) {
  Arnn arnn(init_random(AnsatzKind::arnn, 6, 2));
  RandomStream a(9), b(9);
  auto x = sample_exact_autoregressive(arnn, 500, a);
  auto y = sample_exact_autoregressive(arnn, 500, b);
  EXPECT_EQ(x.configurations, y.configurations);
  EXPECT_EQ(x.log_amplitudes, y.log_amplitudes);
}

TEST(ExactSampler, Rejections) {
  Rbm rbm(init_random(AnsatzKind::rbm, 4, 1));
  Arnn arnn(init_random(AnsatzKind::arnn, 4, 1));
  RandomStream rng(1);
  EXPECT_THROW(sample_exact_autoregressive(rbm, 10, rng),
               std::invalid_argument);
  EXPECT_THROW(sample_exact_autoregressive(arnn, 0, rng),
               std::invalid_argument);
  // A scaled autoregressive network is no longer normalized.
  ScaledAnsatz scaled(std::make_shared<Arnn>(arnn.parameters()), {0.5, 0.0});
  EXPECT_THROW(sample_exact_autoregressive(scaled, 10, rng),
               std::invalid_argument);
}

TEST(Metropolis, AcceptanceRule) {
  EXPECT_EQ(metropolis_acceptance(0.0, 0.1), 1.0);
  EXPECT_EQ(metropolis_acceptance(0.3, 0.3), 1.0);
  EXPECT_DOUBLE_EQ(metropolis_acceptance(0.0, -0.5), std::exp(-1.0));
  EXPECT_EQ(metropolis_acceptance(0.0, testing::zero_amplitude().real()),
            0.0);
}

TEST(Metropolis, ZeroWeightRbmAcceptsEverything) {
  Rbm rbm(zero_params(AnsatzKind::rbm, 6));
  RandomStream rng(21);
  auto batch = sample_metropolis(rbm, 100000, ChainSettings{}, rng);
  EXPECT_EQ(batch.provenance, SampleProvenance::markov_chain);
  EXPECT_EQ(batch.accepted_steps, batch.total_steps);
  EXPECT_EQ(batch.acceptance_rate, 1.0);
  EXPECT_EQ(batch.total_steps, (25U + 100000U) * 6U);
  for (double f : up_frequencies(batch)) EXPECT_NEAR(f, 0.5, 0.006);
}

// One sample per sweep leaves consecutive samples correlated; at n = 2e5 the
// expected distance is about 0.019, so the check uses 1e6 samples.
TEST(Metropolis, TotalVariationAgainstEnumeration) {
  Rbm rbm(init_random(AnsatzKind::rbm, 8, 31));
  RandomStream rng(32);
  auto batch = sample_metropolis(rbm, 1000000, ChainSettings{}, rng);
  EXPECT_LT(tv_distance(histogram(batch, 8), exact_probabilities(rbm)), 0.02);
}

TEST(Metropolis, AcceptanceRateIsExactRatio) {
  Architecture arch;
  arch.weight_init = WeightInit::symmetric;
  auto p = init_random(AnsatzKind::rbm, 6, 4, arch);
  for (double& v : p.values) v *= 60.0;
  Rbm rbm(p);
  ChainSettings settings;
  settings.chains = 3;
  settings.sweeps_per_sample = 2;
  RandomStream rng(8);
  auto batch = sample_metropolis(rbm, 1000, settings, rng);
  EXPECT_GT(batch.accepted_steps, 0U);
  EXPECT_LT(batch.accepted_steps, batch.total_steps);
  EXPECT_EQ(batch.total_steps, 3U * 25U * 6U + 1000U * 2U * 6U);
  EXPECT_EQ(batch.acceptance_rate,
            static_cast<double>(batch.accepted_steps) /
                static_cast<double>(batch.total_steps));
}

TEST(Metropolis, DeterministicAndWorkerIndependent) {
  Rbm rbm(init_random(AnsatzKind::rbm, 7, 5));
  ChainSettings one;
  one.chains = 4;
  ChainSettings many = one;
  many.workers = 4;
  RandomStream a(77), b(77);
  auto x = sample_metropolis(rbm, 1001, one, a);
  auto y = sample_metropolis(rbm, 1001, many, b);
  EXPECT_EQ(x.size(), 1001U);
  EXPECT_EQ(x.configurations, y.configurations);
  EXPECT_EQ(x.log_amplitudes, y.log_amplitudes);
  EXPECT_EQ(x.accepted_steps, y.accepted_steps);
  // The caller's stream advanced identically.
  EXPECT_EQ(a(), b());
}

TEST(Metropolis, LogAmplitudesMatchSource) {
  Rbm rbm(init_random(AnsatzKind::rbm, 9, 6));
  RandomStream rng(3);
  auto batch = sample_metropolis(rbm, 300, ChainSettings{}, rng);
  for (std::size_t k = 0; k < batch.size(); ++k)
    EXPECT_EQ(batch.log_amplitudes[k],
              rbm.log_amplitude(batch.configurations[k]));
}

TEST(Metropolis, DetailedBalanceOnSampledPairs) {
  Architecture arch;
  arch.weight_init = WeightInit::symmetric;
  auto p = init_random(AnsatzKind::rbm, 8, 14, arch);
  for (double& v : p.values) v *= 40.0;
  Rbm rbm(p);
  const auto prob = exact_probabilities(rbm);
  RandomStream rng(15);
  auto batch = sample_metropolis(rbm, 2000, ChainSettings{}, rng);
  for (const auto& s : batch.configurations) {
    const int k = static_cast<int>(rng.below(8));
    const auto t = flip(s, k);
    const double ls = rbm.log_amplitude(s).real();
    const double lt = rbm.log_amplitude(t).real();
    const double forward = prob[pack(s)] * metropolis_acceptance(ls, lt);
    const double backward = prob[pack(t)] * metropolis_acceptance(lt, ls);
    EXPECT_NEAR(forward, backward, 1e-12 * std::max(forward, backward));
  }
}

TEST(Metropolis, AvoidsZeroAmplitudeStates) {
  // Support on configurations with site 0 up.
  std::vector<LogAmplitude> table(16);
  for (std::uint64_t i = 0; i < 16; ++i)
    table[i] = (i & 1U) ? LogAmplitude{0.1 * static_cast<double>(i), 0.0}
                        : testing::zero_amplitude();
  TableAnsatz ansatz(4, table);
  RandomStream rng(4);
  ChainSettings settings;
  settings.chains = 5;
  auto batch = sample_metropolis(ansatz, 5000, settings, rng);
  for (const auto& c : batch.configurations) ASSERT_TRUE(c.is_up(0));
  for (const auto& a : batch.log_amplitudes) ASSERT_TRUE(std::isfinite(a.real()));
}

TEST(Metropolis, Rejections) {
  Rbm rbm(init_random(AnsatzKind::rbm, 4, 1));
  RandomStream rng(1);
  EXPECT_THROW(sample_metropolis(rbm, 0, ChainSettings{}, rng),
               std::invalid_argument);
  ChainSettings bad;
  bad.chains = 0;
  EXPECT_THROW(sample_metropolis(rbm, 10, bad, rng), std::invalid_argument);
  bad = ChainSettings{};
  bad.sweeps_per_sample = 0;
  EXPECT_THROW(sample_metropolis(rbm, 10, bad, rng), std::invalid_argument);
  TableAnsatz dead(3, std::vector<LogAmplitude>(8, testing::zero_amplitude()));
  EXPECT_THROW(sample_metropolis(dead, 10, ChainSettings{}, rng),
               std::runtime_error);
}

TEST(SampleAuto, Dispatch) {
  Rbm rbm(init_random(AnsatzKind::rbm, 5, 1));
  Arnn arnn(init_random(AnsatzKind::arnn, 5, 1));
  RandomStream rng(1);
  EXPECT_EQ(sample_auto(arnn, 10, ChainSettings{}, rng).provenance,
            SampleProvenance::exact);
  EXPECT_EQ(sample_auto(rbm, 10, ChainSettings{}, rng).provenance,
            SampleProvenance::markov_chain);
  EXPECT_EQ(to_string(SampleProvenance::markov_chain), "markov-chain");
}

}  // namespace
}  // namespace nqsfid
