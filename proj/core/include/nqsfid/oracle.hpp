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

#ifndef NQSFID_ORACLE_HPP
#define NQSFID_ORACLE_HPP

#include <complex>
#include <vector>

#include "nqsfid/ansatz.hpp"

namespace nqsfid {

// Exact full-basis quantities. All functions enumerate the 2^L basis states
// and refuse L > kMaxEnumerationSites with std::invalid_argument. Sums are
// accumulated in the log domain against the largest log-magnitude, so
// unnormalized amplitudes far outside the double range are handled.

enum class EnumerationOrder { forward, reversed };

// Log-amplitudes of every basis state in pack order.
std::vector<LogAmplitude> enumerate_log_amplitudes(const Ansatz& ansatz);

// log N_psi = log sum_s |psi(s)|^2.
double exact_log_norm(const Ansatz& ansatz,
                      EnumerationOrder order = EnumerationOrder::forward);
// N_psi; may be +inf when log N exceeds the double range.
double exact_norm(const Ansatz& ansatz,
                  EnumerationOrder order = EnumerationOrder::forward);

// <phi|psi> = sum_s psi(s) conj(phi(s)) / sqrt(N_psi N_phi).
std::complex<double> exact_overlap(
    const Ansatz& psi, const Ansatz& phi,
    EnumerationOrder order = EnumerationOrder::forward);

// Same as exact_overlap for precomputed log-amplitude tables.
std::complex<double> overlap_from_log_amplitudes(
    const std::vector<LogAmplitude>& psi, const std::vector<LogAmplitude>& phi,
    EnumerationOrder order = EnumerationOrder::forward);

double exact_fidelity(const Ansatz& psi, const Ansatz& phi);

// |psi(s)|^2 / N_psi in pack order.
std::vector<double> exact_probabilities(const Ansatz& ansatz);

// Exact first and second moments of the ratio variables under their sampling
// distributions: Z = psi/phi under |phi|^2/N_phi, W = phi/psi under
// |psi|^2/N_psi. The variances are summed directly as E|Z|^2 - |E Z|^2.
struct RatioMoments {
  std::complex<double> mean_z;
  std::complex<double> mean_w;
  double var_z = 0.0;
  double var_w = 0.0;
};

RatioMoments exact_var_ratios(const Ansatz& psi, const Ansatz& phi);

struct ExactSummary {
  double log_norm_psi = 0.0;
  double log_norm_phi = 0.0;
  double norm_psi = 0.0;
  double norm_phi = 0.0;
  std::complex<double> overlap;
  double fidelity = 0.0;
  double var_z_exact = 0.0;
  double var_w_exact = 0.0;

  friend bool operator==(const ExactSummary&, const ExactSummary&) = default;
};

ExactSummary exact_summary(const Ansatz& psi, const Ansatz& phi);

}  // namespace nqsfid

#endif  // NQSFID_ORACLE_HPP
