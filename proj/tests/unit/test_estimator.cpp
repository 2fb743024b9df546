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

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "nqsfid/arnn.hpp"
#include "nqsfid/bounds.hpp"
#include "nqsfid/estimator.hpp"
#include "nqsfid/experiment.hpp"
#include "nqsfid/oracle.hpp"
#include "nqsfid/rbm.hpp"
#include "test_support.hpp"

namespace nqsfid {
namespace {

using cd = std::complex<double>;
using testing::TableAnsatz;
using testing::zero_amplitude;

Architecture symmetric() {
  Architecture a;
  a.weight_init = WeightInit::symmetric;
  return a;
}

SampleBatch batch_of(const Ansatz& source,
                     std::vector<SpinConfiguration> configs) {
  SampleBatch b;
  b.source = &source;
  for (const auto& c : configs) b.log_amplitudes.push_back(source.log_amplitude(c));
  b.configurations = std::move(configs);
  return b;
}

TEST(Estimator, IdenticalStatesGiveOne) {
  Rbm rbm(init_random(AnsatzKind::rbm, 8, 3));
  RandomStream rng(1);
  auto batch = sample_metropolis(rbm, 500, ChainSettings{}, rng);
  EXPECT_EQ(estimate_y1(rbm, rbm, batch).value, cd(1.0, 0.0));
  EXPECT_EQ(estimate_y2(rbm, rbm, batch).value, cd(1.0, 0.0));
  auto r = estimate_general(rbm, rbm, batch, batch);
  EXPECT_EQ(r.fidelity, 1.0);
  EXPECT_EQ(r.overlap, cd(1.0, 0.0));
  EXPECT_EQ(r.imag_residual, 0.0);

  Arnn arnn(init_random(AnsatzKind::arnn, 6, 3));
  auto exact = sample_exact_autoregressive(arnn, 300, rng);
  auto n = estimate_normalized(arnn, arnn, exact);
  EXPECT_EQ(n.overlap, cd(1.0, 0.0));
  EXPECT_EQ(n.fidelity, 1.0);
  EXPECT_EQ(n.n1, 300U);
  EXPECT_EQ(n.n2, 0U);
  EXPECT_FALSE(n.y2.has_value());
}

TEST(Estimator, DisjointSupportGivesZero) {
  // psi lives on site 0 up, phi on site 0 down.
  std::vector<LogAmplitude> a(16), b(16);
  for (std::uint64_t i = 0; i < 16; ++i) {
    a[i] = (i & 1U) ? LogAmplitude{0.2, 0.1 * i} : zero_amplitude();
    b[i] = (i & 1U) ? zero_amplitude() : LogAmplitude{-0.3, 0.0};
  }
  TableAnsatz psi(4, a), phi(4, b);
  RandomStream rng(2);
  auto from_phi = sample_metropolis(phi, 400, ChainSettings{}, rng);
  auto from_psi = sample_metropolis(psi, 400, ChainSettings{}, rng);
  auto y1 = estimate_y1(psi, phi, from_phi);
  auto y2 = estimate_y2(psi, phi, from_psi);
  EXPECT_EQ(y1.value, cd(0.0, 0.0));
  EXPECT_EQ(y1.zero_count, 400U);
  EXPECT_EQ(y2.value, cd(0.0, 0.0));
  auto o = estimate_overlap(y1.value, y2.value);
  EXPECT_FALSE(o.phase_defined);
  EXPECT_EQ(o.value, cd(0.0, 0.0));
}

TEST(Estimator, ZeroDenominatorIsAnError) {
  std::vector<LogAmplitude> a(4, LogAmplitude{0.0, 0.0});
  std::vector<LogAmplitude> b = a;
  b[2] = zero_amplitude();
  TableAnsatz psi(2, a), phi(2, b);
  auto batch = batch_of(psi, {SpinConfiguration::from_index(2, 2)});
  EXPECT_THROW(estimate_y1(psi, phi, batch), std::domain_error);
  EXPECT_THROW(estimate_y1(psi, phi, SampleBatch{}), std::invalid_argument);
}

TEST(Estimator, NormalizedModeRejectsUnnormalizedStates) {
  Rbm rbm(init_random(AnsatzKind::rbm, 4, 1));
  Arnn arnn(init_random(AnsatzKind::arnn, 4, 1));
  RandomStream rng(1);
  auto batch = sample_exact_autoregressive(arnn, 10, rng);
  EXPECT_THROW(estimate_normalized(rbm, arnn, batch), std::invalid_argument);
  EXPECT_THROW(estimate_normalized(arnn, rbm, batch), std::invalid_argument);
}

TEST(Estimator, Arithmetic) {
  EXPECT_EQ(estimate_fidelity(1.0, 1.0).value, 1.0);
  auto f = estimate_fidelity({0.6, 0.2}, {0.6, -0.2});
  EXPECT_NEAR(f.value, 0.40, 1e-15);
  EXPECT_NEAR(f.imag_residual, 0.0, 1e-15);
  EXPECT_EQ(estimate_overlap(1.0, 1.0).value, cd(1.0, 0.0));
  auto o = estimate_overlap({0.0, 0.5}, {0.0, -0.5});
  EXPECT_NEAR(std::abs(o.value), 0.5, 1e-15);
  EXPECT_NEAR(std::arg(o.value), std::numbers::pi / 2, 1e-15);
  EXPECT_TRUE(o.phase_defined);
}

TEST(Estimator, BatchOfOneIsTheSingleRatio) {
  Arnn psi(init_random(AnsatzKind::arnn, 6, 1, symmetric()));
  Arnn phi(init_random(AnsatzKind::arnn, 6, 2, symmetric()));
  const auto s = SpinConfiguration::from_index(37, 6);
  auto r = estimate_normalized(psi, phi, batch_of(phi, {s}));
  const cd expected = std::exp(psi.log_amplitude(s) - phi.log_amplitude(s));
  EXPECT_NEAR(std::abs(r.y1 - expected), 0.0, 1e-15 * std::abs(expected));
}

TEST(Estimator, OverflowingRatiosAreClampedAndCounted) {
  std::vector<LogAmplitude> a(2, LogAmplitude{800.0, 0.0});
  std::vector<LogAmplitude> b(2, LogAmplitude{0.0, 0.0});
  TableAnsatz psi(1, a), phi(1, b);
  auto y1 = estimate_y1(psi, phi, batch_of(phi, {SpinConfiguration(1)}));
  EXPECT_EQ(y1.overflow_count, 1U);
  EXPECT_TRUE(std::isfinite(y1.value.real()));
  EXPECT_DOUBLE_EQ(y1.value.real(), std::exp(kMaxLogRatio));
}

TEST(Estimator, PermutationInvariant) {
  Rbm psi(init_random(AnsatzKind::rbm, 8, 1, symmetric()));
  Rbm phi(init_random(AnsatzKind::rbm, 8, 2, symmetric()));
  RandomStream rng(5);
  auto batch = sample_metropolis(phi, 2000, ChainSettings{}, rng);
  auto y = estimate_y1(psi, phi, batch).value;
  auto shuffled = batch;
  std::reverse(shuffled.configurations.begin(), shuffled.configurations.end());
  std::reverse(shuffled.log_amplitudes.begin(), shuffled.log_amplitudes.end());
  EXPECT_NEAR(std::abs(estimate_y1(psi, phi, shuffled).value - y), 0.0,
              1e-14 * std::abs(y));
}

TEST(Estimator, GlobalScaleInvariance) {
  auto psi = std::make_shared<Rbm>(init_random(AnsatzKind::rbm, 9, 1));
  auto phi = std::make_shared<Rbm>(init_random(AnsatzKind::rbm, 9, 2));
  RandomStream rng(6);
  auto from_phi = sample_metropolis(*phi, 3000, ChainSettings{}, rng);
  auto from_psi = sample_metropolis(*psi, 3000, ChainSettings{}, rng);
  auto base = estimate_general(*psi, *phi, from_phi, from_psi);
  for (cd offset : {cd(3.0, 1.0), cd(-40.0, -2.5), cd(0.0, 0.7)}) {
    ScaledAnsatz scaled(psi, offset);
    auto r = estimate_general(scaled, *phi, from_phi, from_psi);
    const cd c = std::exp(offset);
    EXPECT_NEAR(std::abs(r.y1 - c * base.y1), 0.0, 1e-12 * std::abs(c * base.y1));
    EXPECT_NEAR(std::abs(*r.y2 - *base.y2 / c), 0.0,
                1e-12 * std::abs(*base.y2 / c));
    EXPECT_NEAR(r.fidelity, base.fidelity, 1e-12 * std::abs(base.fidelity));
  }
}

TEST(Estimator, ExactMeansAreConjugateForNormalizedStates) {
  Arnn psi(init_random(AnsatzKind::arnn, 8, 1, symmetric()));
  Arnn phi(init_random(AnsatzKind::arnn, 8, 2, symmetric()));
  auto m = exact_var_ratios(psi, phi);
  EXPECT_NEAR(std::abs(m.mean_w - std::conj(m.mean_z)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(m.mean_z - exact_overlap(psi, phi)), 0.0, 1e-12);
}

TEST(Estimator, MeanOfRepeatedEstimatesApproachesFidelity) {
  auto pair = generate_pair_with_fidelity(AnsatzKind::rbm, 8, 0.6, 3);
  const double f = pair.oracle->fidelity;
  RandomStream root(4);
  double sum = 0.0;
  constexpr int kReps = 100;
  constexpr std::size_t kHalf = 2048;
  for (int r = 0; r < kReps; ++r) {
    RandomStream rng = root.split(r);
    auto a = sample_metropolis(*pair.phi, kHalf, ChainSettings{}, rng);
    auto b = sample_metropolis(*pair.psi, kHalf, ChainSettings{}, rng);
    sum += estimate_general(*pair.psi, *pair.phi, a, b).fidelity;
  }
  const double sd = std::sqrt(variance_fidelity(f, kHalf, kHalf) / kReps);
  EXPECT_NEAR(sum / kReps, f, 5.0 * sd);
}

// Chebyshev radius at delta = 0.32 around the exact overlap.
TEST(EstimatorCoverage, NormalizedOverlapDisk) {
  auto pair = generate_pair_with_fidelity(AnsatzKind::arnn, 10, 0.5, 7,
                                          symmetric());
  const auto& oracle = *pair.oracle;
  constexpr std::size_t kN1 = 65536;
  const double eps = epsilon_normalized(oracle.fidelity, kN1, 0.32);
  RandomStream root(8);
  int inside = 0;
  for (int r = 0; r < 100; ++r) {
    RandomStream rng = root.split(r);
    auto batch = sample_exact_autoregressive(*pair.phi, kN1, rng);
    auto rep = estimate_normalized(*pair.psi, *pair.phi, batch);
    if (std::abs(rep.y1 - oracle.overlap) < eps) ++inside;
  }
  EXPECT_GE(inside, 68);
}

TEST(EstimatorCoverage, NormalizedFidelityInterval) {
  auto pair = generate_pair_with_fidelity(AnsatzKind::arnn, 8, 0.4, 9,
                                          symmetric());
  const double f = pair.oracle->fidelity;
  constexpr std::size_t kN1 = 8192;
  const double half = fidelity_halfwidth_normalized(
      f, epsilon_normalized(f, kN1, 0.32));
  RandomStream root(10);
  int inside = 0;
  for (int r = 0; r < 100; ++r) {
    RandomStream rng = root.split(r);
    auto batch = sample_exact_autoregressive(*pair.phi, kN1, rng);
    if (std::abs(estimate_normalized(*pair.psi, *pair.phi, batch).fidelity -
                 f) < half) {
      ++inside;
    }
  }
  EXPECT_GE(inside, 68);
}

TEST(EstimatorCoverage, GeneralOverlapRegion) {
  auto pair = generate_pair_with_fidelity(AnsatzKind::rbm, 10, 0.5, 11);
  const auto& oracle = *pair.oracle;
  constexpr std::size_t kN = 8192;
  const double f = oracle.fidelity;
  const Interval mag =
      overlap_magnitude_interval(f, epsilon_prime(f, kN, 0.32));
  const double cone = phase_halfwidth(f, kN, 0.32);
  RandomStream root(12);
  int inside = 0;
  for (int r = 0; r < 100; ++r) {
    RandomStream rng = root.split(r);
    auto a = sample_metropolis(*pair.phi, kN / 2, ChainSettings{}, rng);
    auto b = sample_metropolis(*pair.psi, kN / 2, ChainSettings{}, rng);
    const cd o = estimate_general(*pair.psi, *pair.phi, a, b).overlap;
    const double m = std::abs(o);
    const double dphase =
        std::abs(wrap_phase(std::arg(o) - std::arg(oracle.overlap)));
    if (m >= mag.lo && m <= mag.hi && dphase <= cone) ++inside;
  }
  EXPECT_GE(inside, 68);
}

TEST(Estimator, SplitAndModeNames) {
  EXPECT_EQ(split_samples(16384).n1, 8192U);
  EXPECT_EQ(split_samples(16384).n2, 8192U);
  EXPECT_EQ(split_samples(7).n1, 4U);
  EXPECT_EQ(split_samples(7).n2, 3U);
  EXPECT_EQ(parse_estimator_mode("general"), EstimatorMode::general);
  EXPECT_EQ(to_string(EstimatorMode::normalized), "normalized");
  EXPECT_THROW(parse_estimator_mode("both"), std::invalid_argument);
}

}  // namespace
}  // namespace nqsfid
