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

#ifndef NQSFID_BOUNDS_HPP
#define NQSFID_BOUNDS_HPP

#include <cstddef>
#include <cstdint>

namespace nqsfid {

// Closed-form Chebyshev error bounds for Monte Carlo overlap and fidelity
// estimates. Every function validates its inputs and throws
// std::invalid_argument on a fidelity outside [0, 1], a failure probability
// outside (0, 1) or a zero sample count. Fidelities within 1e-9 of [0, 1]
// are clamped, so exactly computed oracle values can be passed directly.

struct BoundInputs {
  double fidelity;
  std::uint64_t n;   // total samples (general estimator)
  std::uint64_t n1;  // samples from |phi|^2
  std::uint64_t n2;  // samples from |psi|^2
  double delta;      // failure probability

  // Validates all fields.
  BoundInputs(double fidelity, std::uint64_t n, std::uint64_t n1,
              std::uint64_t n2, double delta);
  // n1 = n2 = n/2, rounding n1 up.
  static BoundInputs balanced(double fidelity, std::uint64_t n, double delta);
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct BoundReport {
  double epsilon = 0.0;             // normalized overlap radius (n1 samples)
  double fidelity_halfwidth = 0.0;  // 2 eps sqrt(F) + eps^2
  double epsilon_prime = 0.0;       // general fidelity radius (n samples)
  double delta_alpha = 0.0;         // phase half-width, radians
  Interval overlap_magnitude;
  double median_epsilon = 0.0;
  bool chebyshev_tighter = false;
};

BoundReport evaluate_bounds(const BoundInputs& in);

// sqrt((1-F) / (n1 delta)): radius of the disk around <phi|psi> containing Y1
// with probability at least 1 - delta.
double epsilon_normalized(double fidelity, std::uint64_t n1, double delta);

// ceil(1 / (eps^2 delta)), the worst case F = 0. A relative slack of 1e-9
// absorbs floating-point noise in the quotient before rounding up.
std::uint64_t required_samples_normalized(double epsilon, double delta);

// 2 eps sqrt(F) + eps^2.
double fidelity_halfwidth_normalized(double fidelity, double epsilon);

// Var(Y1) = (1-F)/n1 for normalized states.
double variance_overlap_normalized(double fidelity, std::uint64_t n1);

// Var(Y1 Y2) = F(1-F)(n1+n2)/(n1 n2) + (1-F)^2/(n1 n2).
double variance_fidelity(double fidelity, std::uint64_t n1, std::uint64_t n2);

// 2 sqrt((F(1-F) + (1-F)^2/n) / (n delta)), i.e. sqrt(Var(Y1Y2)/delta) at
// n1 = n2 = n/2.
double epsilon_prime(double fidelity, std::uint64_t n, double delta);

// First-order expansion in 1/n: 2 sqrt(F(1-F)/(n delta)) + (1-F)^2/(n^2
// delta). Inaccurate near F = 0.
double epsilon_prime_taylor(double fidelity, std::uint64_t n, double delta);

// Median-of-means radius from delta = exp(-n eps^2 / 64).
double epsilon_median(std::uint64_t n, double delta);

// F(1-F) + (1-F)^2/n < -16 delta ln(delta).
bool chebyshev_tighter_than_median(double fidelity, std::uint64_t n,
                                   double delta);

// Half-width of the phase cone of the overlap estimate; pi when F = 0 or the
// arcsin argument exceeds 1.
double phase_halfwidth(double fidelity, std::uint64_t n, double delta);

// Interval for sqrt|Y1 Y2| given the fidelity radius, clamped to [0, 1].
Interval overlap_magnitude_interval(double fidelity, double epsilon_prime);

}  // namespace nqsfid

#endif  // NQSFID_BOUNDS_HPP
