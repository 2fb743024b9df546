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

#ifndef NQSFID_ESTIMATOR_HPP
#define NQSFID_ESTIMATOR_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>

#include "nqsfid/ansatz.hpp"
#include "nqsfid/sampling.hpp"

namespace nqsfid {

// Log-ratios with a real part above this are clamped before exponentiation
// and counted as overflows.
inline constexpr double kMaxLogRatio = 700.0;

// Sample mean of an amplitude ratio numerator(s)/denominator(s).
struct RatioMean {
  std::complex<double> value;
  std::size_t count = 0;
  std::size_t overflow_count = 0;
  // Samples where the numerator amplitude was exactly zero.
  std::size_t zero_count = 0;
};

// Y1 = mean of Z(s) = psi(s)/phi(s) over samples drawn from |phi|^2.
// Throws std::domain_error if phi vanishes on a sample.
RatioMean estimate_y1(const Ansatz& psi, const Ansatz& phi,
                      const SampleBatch& batch_from_phi);

// Y2 = mean of W(s) = phi(s)/psi(s) over samples drawn from |psi|^2.
RatioMean estimate_y2(const Ansatz& psi, const Ansatz& phi,
                      const SampleBatch& batch_from_psi);

struct FidelityEstimate {
  double value = 0.0;          // Re(Y1 Y2)
  double imag_residual = 0.0;  // Im(Y1 Y2)
};

FidelityEstimate estimate_fidelity(std::complex<double> y1,
                                   std::complex<double> y2);

struct OverlapEstimate {
  std::complex<double> value;
  // False when Y1 == 0; the phase is then reported as 0.
  bool phase_defined = true;
};

// sqrt|Y1 Y2| e^{i arg Y1}.
OverlapEstimate estimate_overlap(std::complex<double> y1,
                                 std::complex<double> y2);

enum class EstimatorMode {
  // Both states normalized; overlap = Y1, one sample set.
  normalized,
  // Unnormalized states; Y1 and Y2 from two sample sets.
  general,
};

std::string_view to_string(EstimatorMode mode);
EstimatorMode parse_estimator_mode(std::string_view name);

struct EstimateReport {
  EstimatorMode mode = EstimatorMode::normalized;
  std::complex<double> y1;
  std::optional<std::complex<double>> y2;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double fidelity = 0.0;
  std::complex<double> overlap;
  double imag_residual = 0.0;
  bool phase_defined = true;
  std::size_t ratio_overflows = 0;
};

// Throws std::invalid_argument unless both ansaetze are normalized.
EstimateReport estimate_normalized(const Ansatz& psi, const Ansatz& phi,
                                   const SampleBatch& batch_from_phi);

EstimateReport estimate_general(const Ansatz& psi, const Ansatz& phi,
                                const SampleBatch& batch_from_phi,
                                const SampleBatch& batch_from_psi);

// Split of a total budget n between the two sample sets: n1 = ceil(n/2).
struct SampleSplit {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};
SampleSplit split_samples(std::size_t n);

}  // namespace nqsfid

#endif  // NQSFID_ESTIMATOR_HPP
