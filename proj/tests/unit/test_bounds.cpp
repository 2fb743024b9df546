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

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "nqsfid/bounds.hpp"

namespace nqsfid {
namespace {

TEST(EpsilonNormalized, Examples) {
  EXPECT_EQ(epsilon_normalized(1.0, 100, 0.32), 0.0);
  EXPECT_NEAR(epsilon_normalized(0.5, 65536, 0.32), 4.8828125e-3, 1e-9);
  const double eps = 0.02;
  const auto n1 = required_samples_normalized(eps, 0.32);
  EXPECT_LE(epsilon_normalized(0.0, n1, 0.32), eps);
  EXPECT_GT(epsilon_normalized(0.0, n1 - 1, 0.32), eps);
}

TEST(RequiredSamples, Examples) {
  EXPECT_EQ(required_samples_normalized(0.01, 0.32), 31250U);
  EXPECT_EQ(required_samples_normalized(1.0, 1.0 - 1e-12), 1U);
  for (double eps : {0.3, 0.05, 0.0123, 0.001})
    for (double delta : {0.01, 0.32, 0.9})
      EXPECT_LE(epsilon_normalized(
                    0.0, required_samples_normalized(eps, delta), delta),
                eps * (1.0 + 1e-12));
  EXPECT_THROW(required_samples_normalized(0.0, 0.32), std::invalid_argument);
  EXPECT_THROW(required_samples_normalized(0.1, 1.0), std::invalid_argument);
}

TEST(FidelityHalfwidth, Examples) {
  const double eps = epsilon_normalized(0.0, 1000, 0.32);
  EXPECT_NEAR(fidelity_halfwidth_normalized(0.0, eps), 1.0 / (1000 * 0.32),
              1e-15);
  EXPECT_EQ(fidelity_halfwidth_normalized(1.0, 0.0), 0.0);
  EXPECT_NEAR(fidelity_halfwidth_normalized(0.25, 0.1), 0.11, 1e-15);
}

TEST(FidelityHalfwidth, PeaksAtHalfForLargeBudgets) {
  double best_f = -1.0, best = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double f = i / 100.0;
    const double w =
        fidelity_halfwidth_normalized(f, epsilon_normalized(f, 65536, 0.32));
    if (w > best) best = w, best_f = f;
  }
  EXPECT_NEAR(best_f, 0.5, 0.011);
}

TEST(VarianceFidelity, Examples) {
  EXPECT_EQ(variance_fidelity(1.0, 3, 7), 0.0);
  EXPECT_EQ(variance_fidelity(0.0, 1, 1), 1.0);
  EXPECT_DOUBLE_EQ(variance_overlap_normalized(0.2, 100), 0.8 / 100);
}

TEST(VarianceFidelity, BalancedSplitMinimizes) {
  for (double f : {0.0, 0.3, 0.7, 0.99}) {
    std::uint64_t best = 0;
    double best_v = std::numeric_limits<double>::infinity();
    for (std::uint64_t n1 = 1; n1 < 100; ++n1) {
      const double v = variance_fidelity(f, n1, 100 - n1);
      if (v < best_v) best_v = v, best = n1;
    }
    EXPECT_EQ(best, 50U) << "F=" << f;
  }
}

TEST(EpsilonPrime, Examples) {
  EXPECT_EQ(epsilon_prime(1.0, 1000, 0.32), 0.0);
  EXPECT_NEAR(epsilon_prime(0.0, 1000, 0.32), 2.0 / (1000 * std::sqrt(0.32)),
              1e-15);
  EXPECT_NEAR(epsilon_prime(0.5, 65536, 0.32), 6.906e-3, 1e-6);
}

TEST(EpsilonPrime, IsRootOfVarianceOverDelta) {
  for (double f : {0.0, 0.1, 0.5, 0.93, 1.0})
    for (std::uint64_t n : {2ULL, 100ULL, 65536ULL})
      for (double delta : {0.01, 0.32, 0.9}) {
        const double lhs = epsilon_prime(f, n, delta);
        const double rhs =
            std::sqrt(variance_fidelity(f, n / 2, n / 2) / delta);
        EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(rhs, 1e-300));
      }
}

TEST(EpsilonPrime, GridMaximumAtHalfMinimaAtEnds) {
  double best_f = -1.0, best = -1.0;
  for (int i = 0; i <= 10; ++i) {
    const double f = i / 10.0;
    const double e = epsilon_prime(f, 65536, 0.32);
    if (e > best) best = e, best_f = f;
    EXPECT_GE(e, epsilon_prime(1.0, 65536, 0.32));
  }
  EXPECT_EQ(best_f, 0.5);
  EXPECT_LT(epsilon_prime(0.0, 65536, 0.32), epsilon_prime(0.1, 65536, 0.32));
}

TEST(EpsilonPrimeTaylor, AccuracyAwayFromZero) {
  EXPECT_EQ(epsilon_prime_taylor(1.0, 1000, 0.32), 0.0);
  const double e = epsilon_prime(0.5, 65536, 0.32);
  EXPECT_LT(std::abs(e - epsilon_prime_taylor(0.5, 65536, 0.32)) / e, 1e-3);
  // The expansion breaks down at F = 0.
  const double exact0 = epsilon_prime(0.0, 1000, 0.32);
  const double taylor0 = epsilon_prime_taylor(0.0, 1000, 0.32);
  EXPECT_NEAR(taylor0, 1.0 / (1000.0 * 1000.0 * 0.32), 1e-18);
  EXPECT_GT(exact0 / taylor0, 100.0);
}

TEST(EpsilonMedian, Examples) {
  EXPECT_NEAR(epsilon_median(64, std::exp(-1.0)), 1.0, 1e-15);
  EXPECT_NEAR(epsilon_median(65536, 0.32), 0.03335, 1e-5);
  const double eps = epsilon_median(5000, 0.05);
  EXPECT_NEAR(std::exp(-5000 * eps * eps / 64), 0.05, 1e-14);
}

TEST(ChebyshevVsMedian, Examples) {
  for (double f : {0.0, 0.25, 0.5, 0.75, 1.0})
    EXPECT_TRUE(chebyshev_tighter_than_median(f, 65536, 0.32));
  for (double delta : {1e-9, 0.001, 0.5, 0.999})
    EXPECT_TRUE(chebyshev_tighter_than_median(1.0, 10, delta));
  EXPECT_FALSE(chebyshev_tighter_than_median(0.5, 65536, 1e-4));
}

TEST(ChebyshevVsMedian, DeltaWindowEndpoints) {
  auto g = [](double d) { return -16.0 * d * std::log(d) - 0.25; };
  boost::math::tools::eps_tolerance<double> tol(40);
  auto lo = boost::math::tools::bisect(g, 1e-6, 1.0 / std::numbers::e, tol);
  auto hi = boost::math::tools::bisect(g, 1.0 / std::numbers::e, 1.0 - 1e-12,
                                       tol);
  EXPECT_NEAR(0.5 * (lo.first + lo.second), 0.00263, 0.000005);
  EXPECT_NEAR(0.5 * (hi.first + hi.second), 0.984, 0.0005);
}

TEST(PhaseHalfwidth, Examples) {
  EXPECT_EQ(phase_halfwidth(1.0, 1000, 0.32), 0.0);
  EXPECT_EQ(phase_halfwidth(0.0, 1000, 0.32), std::numbers::pi);
  EXPECT_NEAR(phase_halfwidth(0.5, 65536, 0.32), 9.766e-3, 1e-6);
  EXPECT_NEAR(phase_halfwidth(0.5, 65536, 0.32),
              std::asin(epsilon_prime(0.5, 65536, 0.32) / std::sqrt(0.5)),
              1e-15);
  // arcsin argument above 1.
  EXPECT_EQ(phase_halfwidth(0.01, 10, 0.32), std::numbers::pi);
}

TEST(OverlapMagnitudeInterval, Examples) {
  auto a = overlap_magnitude_interval(1.0, 0.0);
  EXPECT_EQ(a.lo, 1.0);
  EXPECT_EQ(a.hi, 1.0);
  auto b = overlap_magnitude_interval(0.5, 0.1);
  EXPECT_NEAR(b.lo, std::sqrt(0.4), 1e-15);
  EXPECT_NEAR(b.hi, std::sqrt(0.6), 1e-15);
  auto c = overlap_magnitude_interval(0.05, 0.1);
  EXPECT_EQ(c.lo, 0.0);
  EXPECT_NEAR(c.hi, std::sqrt(0.15), 1e-15);
  auto d = overlap_magnitude_interval(0.95, 0.2);
  EXPECT_EQ(d.hi, 1.0);
  EXPECT_LE(d.lo, d.hi);
}

TEST(Bounds, MonotoneInSamplesAndDelta) {
  const std::uint64_t ns[] = {100, 10000, 1000000};
  const double deltas[] = {0.01, 0.32, 0.9};
  for (int i = 0; i <= 10; ++i) {
    const double f = i / 10.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const auto n = ns[a];
        const double d = deltas[b];
        if (a + 1 < 3) {
          const auto m = ns[a + 1];
          EXPECT_LE(epsilon_normalized(f, m, d), epsilon_normalized(f, n, d));
          EXPECT_LE(epsilon_prime(f, m, d), epsilon_prime(f, n, d));
          EXPECT_LE(phase_halfwidth(f, m, d), phase_halfwidth(f, n, d));
        }
        if (b + 1 < 3) {
          const double e = deltas[b + 1];
          EXPECT_LE(epsilon_normalized(f, n, e), epsilon_normalized(f, n, d));
          EXPECT_LE(epsilon_prime(f, n, e), epsilon_prime(f, n, d));
          EXPECT_LE(phase_halfwidth(f, n, e), phase_halfwidth(f, n, d));
        }
      }
  }
}

TEST(Bounds, ReportAndValidation) {
  auto in = BoundInputs::balanced(0.5, 65536, 0.32);
  EXPECT_EQ(in.n1, 32768U);
  EXPECT_EQ(in.n2, 32768U);
  auto r = evaluate_bounds(in);
  EXPECT_NEAR(r.epsilon_prime, 6.906e-3, 1e-6);
  EXPECT_NEAR(r.delta_alpha, 9.766e-3, 1e-6);
  EXPECT_NEAR(r.median_epsilon, 0.03335, 1e-5);
  EXPECT_TRUE(r.chebyshev_tighter);
  EXPECT_LE(r.overlap_magnitude.lo, r.overlap_magnitude.hi);
  EXPECT_EQ(BoundInputs::balanced(0.5, 7, 0.32).n1, 4U);

  EXPECT_THROW(BoundInputs(1.5, 10, 5, 5, 0.32), std::invalid_argument);
  EXPECT_THROW(BoundInputs(0.5, 10, 5, 5, 0.0), std::invalid_argument);
  EXPECT_THROW(BoundInputs(0.5, 10, 5, 5, 1.0), std::invalid_argument);
  EXPECT_THROW(BoundInputs(0.5, 0, 0, 0, 0.32), std::invalid_argument);
  EXPECT_THROW(epsilon_prime(std::nan(""), 10, 0.32), std::invalid_argument);
  EXPECT_THROW(epsilon_normalized(0.5, 0, 0.32), std::invalid_argument);
  // Oracle values a hair outside [0, 1] are accepted.
  EXPECT_EQ(epsilon_prime(1.0 + 1e-12, 10, 0.32), 0.0);
}

}  // namespace
}  // namespace nqsfid
