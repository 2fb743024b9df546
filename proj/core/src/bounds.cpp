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

#include "nqsfid/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nqsfid {

namespace {

constexpr double kFidelitySlack = 1e-9;

double checked_fidelity(double f) {
  if (!(f >= -kFidelitySlack && f <= 1.0 + kFidelitySlack)) {
    throw std::invalid_argument("fidelity " + std::to_string(f) +
                                " outside [0, 1]");
  }
  return std::clamp(f, 0.0, 1.0);
}

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("failure probability " +
                                std::to_string(delta) + " outside (0, 1)");
  }
}

void check_count(std::uint64_t n, const char* name) {
  if (n == 0) {
    throw std::invalid_argument(std::string(name) + " must be positive");
  }
}

}  // namespace

BoundInputs::BoundInputs(double fidelity_, std::uint64_t n_,
                         std::uint64_t n1_, std::uint64_t n2_, double delta_)
    : fidelity(checked_fidelity(fidelity_)),
      n(n_),
      n1(n1_),
      n2(n2_),
      delta(delta_) {
  check_count(n, "n");
  check_count(n1, "n1");
  check_count(n2, "n2");
  check_delta(delta);
}

BoundInputs BoundInputs::balanced(double fidelity, std::uint64_t n,
                                  double delta) {
  check_count(n, "n");
  const std::uint64_t n1 = (n + 1) / 2;
  return BoundInputs(fidelity, n, n1, std::max<std::uint64_t>(n - n1, 1),
                     delta);
}

double epsilon_normalized(double fidelity, std::uint64_t n1, double delta) {
  const double f = checked_fidelity(fidelity);
  check_count(n1, "n1");
  check_delta(delta);
  return std::sqrt((1.0 - f) / (static_cast<double>(n1) * delta));
}

std::uint64_t required_samples_normalized(double epsilon, double delta) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  }
  check_delta(delta);
  const double exact = 1.0 / (epsilon * epsilon * delta);
  return static_cast<std::uint64_t>(std::ceil(exact * (1.0 - 1e-9)));
}

double fidelity_halfwidth_normalized(double fidelity, double epsilon) {
  const double f = checked_fidelity(fidelity);
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
  return 2.0 * epsilon * std::sqrt(f) + epsilon * epsilon;
}

double variance_overlap_normalized(double fidelity, std::uint64_t n1) {
  const double f = checked_fidelity(fidelity);
  check_count(n1, "n1");
  return (1.0 - f) / static_cast<double>(n1);
}

double variance_fidelity(double fidelity, std::uint64_t n1, std::uint64_t n2) {
  const double f = checked_fidelity(fidelity);
  check_count(n1, "n1");
  check_count(n2, "n2");
  const double a = static_cast<double>(n1);
  const double b = static_cast<double>(n2);
  const double g = 1.0 - f;
  return f * g * (a + b) / (a * b) + g * g / (a * b);
}

double epsilon_prime(double fidelity, std::uint64_t n, double delta) {
  const double f = checked_fidelity(fidelity);
  check_count(n, "n");
  check_delta(delta);
  const double nd = static_cast<double>(n);
  const double g = 1.0 - f;
  return 2.0 * std::sqrt((f * g + g * g / nd) / (nd * delta));
}

double epsilon_prime_taylor(double fidelity, std::uint64_t n, double delta) {
  const double f = checked_fidelity(fidelity);
  check_count(n, "n");
  check_delta(delta);
  const double nd = static_cast<double>(n);
  const double g = 1.0 - f;
  return 2.0 * std::sqrt(f * g / (nd * delta)) + g * g / (nd * nd * delta);
}

double epsilon_median(std::uint64_t n, double delta) {
  check_count(n, "n");
  check_delta(delta);
  return 8.0 * std::sqrt(std::log(1.0 / delta) / static_cast<double>(n));
}

bool chebyshev_tighter_than_median(double fidelity, std::uint64_t n,
                                   double delta) {
  const double f = checked_fidelity(fidelity);
  check_count(n, "n");
  check_delta(delta);
  const double g = 1.0 - f;
  const double lhs = f * g + g * g / static_cast<double>(n);
  return lhs < -16.0 * delta * std::log(delta);
}

double phase_halfwidth(double fidelity, std::uint64_t n, double delta) {
  const double f = checked_fidelity(fidelity);
  check_count(n, "n");
  check_delta(delta);
  if (f == 0.0) return std::numbers::pi;
  const double nd = static_cast<double>(n);
  const double g = 1.0 - f;
  const double arg = 2.0 * std::sqrt(f * g + g * g / nd) /
                     std::sqrt(f * nd * delta);
  if (arg > 1.0) return std::numbers::pi;
  return std::asin(arg);
}

Interval overlap_magnitude_interval(double fidelity, double epsilon_prime) {
  const double f = checked_fidelity(fidelity);
  if (!(epsilon_prime >= 0.0)) {
    throw std::invalid_argument("epsilon_prime must be >= 0");
  }
  Interval out;
  out.lo = std::sqrt(std::max(0.0, f - epsilon_prime));
  out.hi = std::min(1.0, std::sqrt(std::min(1.0 + epsilon_prime,
                                            f + epsilon_prime)));
  return out;
}

BoundReport evaluate_bounds(const BoundInputs& in) {
  BoundReport r;
  r.epsilon = epsilon_normalized(in.fidelity, in.n1, in.delta);
  r.fidelity_halfwidth = fidelity_halfwidth_normalized(in.fidelity, r.epsilon);
  r.epsilon_prime = epsilon_prime(in.fidelity, in.n, in.delta);
  r.delta_alpha = phase_halfwidth(in.fidelity, in.n, in.delta);
  r.overlap_magnitude = overlap_magnitude_interval(in.fidelity,
                                                   r.epsilon_prime);
  r.median_epsilon = epsilon_median(in.n, in.delta);
  r.chebyshev_tighter = chebyshev_tighter_than_median(in.fidelity, in.n,
                                                      in.delta);
  return r;
}

}  // namespace nqsfid
