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

#include "nqsfid/estimator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nqsfid/summation.hpp"

namespace nqsfid {

std::string_view to_string(EstimatorMode mode) {
  return mode == EstimatorMode::normalized ? "normalized" : "general";
}

EstimatorMode parse_estimator_mode(std::string_view name) {
  if (name == "normalized") return EstimatorMode::normalized;
  if (name == "general") return EstimatorMode::general;
  throw std::invalid_argument("unknown estimator mode '" + std::string(name) +
                              "' (expected normalized or general)");
}

namespace {

RatioMean ratio_mean(const Ansatz& numerator, const Ansatz& denominator,
                     const SampleBatch& batch) {
  if (batch.size() == 0) {
    throw std::invalid_argument("ratio estimate needs a nonempty batch");
  }
  if (batch.num_sites() != numerator.num_sites() ||
      batch.num_sites() != denominator.num_sites()) {
    throw std::invalid_argument("ratio estimate: site count mismatch");
  }
  const bool cached = batch.source == &denominator &&
                      batch.log_amplitudes.size() == batch.size();
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();

  RatioMean out;
  out.count = batch.size();
  ComplexCompensatedSum sum;
  for (std::size_t k = 0; k < batch.size(); ++k) {
    const SpinConfiguration& s = batch.configurations[k];
    const LogAmplitude log_den =
        cached ? batch.log_amplitudes[k] : denominator.log_amplitude(s);
    if (log_den.real() == kNegInf) {
      throw std::domain_error(
          "sampled configuration " + s.to_string() +
          " has zero amplitude under its own sampling distribution");
    }
    const LogAmplitude log_num = numerator.log_amplitude(s);
    if (log_num.real() == kNegInf) {
      ++out.zero_count;
      continue;
    }
    LogAmplitude delta = log_num - log_den;
    if (delta.real() > kMaxLogRatio) {
      delta.real(kMaxLogRatio);
      ++out.overflow_count;
    }
    sum.add(std::exp(delta));
  }
  out.value = sum.value() / static_cast<double>(out.count);
  return out;
}

}  // namespace

RatioMean estimate_y1(const Ansatz& psi, const Ansatz& phi,
                      const SampleBatch& batch_from_phi) {
  return ratio_mean(psi, phi, batch_from_phi);
}

RatioMean estimate_y2(const Ansatz& psi, const Ansatz& phi,
                      const SampleBatch& batch_from_psi) {
  return ratio_mean(phi, psi, batch_from_psi);
}

FidelityEstimate estimate_fidelity(std::complex<double> y1,
                                   std::complex<double> y2) {
  const std::complex<double> product = y1 * y2;
  return {product.real(), product.imag()};
}

OverlapEstimate estimate_overlap(std::complex<double> y1,
                                 std::complex<double> y2) {
  const double magnitude = std::sqrt(std::abs(y1 * y2));
  if (y1 == 0.0) return {{magnitude, 0.0}, false};
  return {std::polar(magnitude, std::arg(y1)), true};
}

EstimateReport estimate_normalized(const Ansatz& psi, const Ansatz& phi,
                                   const SampleBatch& batch_from_phi) {
  if (!psi.is_normalized() || !phi.is_normalized()) {
    throw std::invalid_argument(
        "estimate_normalized requires two normalized ansaetze");
  }
  const RatioMean y1 = estimate_y1(psi, phi, batch_from_phi);
  EstimateReport report;
  report.mode = EstimatorMode::normalized;
  report.y1 = y1.value;
  report.n1 = y1.count;
  report.n2 = 0;
  report.overlap = y1.value;
  report.fidelity = std::norm(y1.value);
  report.phase_defined = y1.value != 0.0;
  report.ratio_overflows = y1.overflow_count;
  return report;
}

EstimateReport estimate_general(const Ansatz& psi, const Ansatz& phi,
                                const SampleBatch& batch_from_phi,
                                const SampleBatch& batch_from_psi) {
  const RatioMean y1 = estimate_y1(psi, phi, batch_from_phi);
  const RatioMean y2 = estimate_y2(psi, phi, batch_from_psi);
  const FidelityEstimate f = estimate_fidelity(y1.value, y2.value);
  const OverlapEstimate o = estimate_overlap(y1.value, y2.value);
  EstimateReport report;
  report.mode = EstimatorMode::general;
  report.y1 = y1.value;
  report.y2 = y2.value;
  report.n1 = y1.count;
  report.n2 = y2.count;
  report.fidelity = f.value;
  report.imag_residual = f.imag_residual;
  report.overlap = o.value;
  report.phase_defined = o.phase_defined;
  report.ratio_overflows = y1.overflow_count + y2.overflow_count;
  return report;
}

SampleSplit split_samples(std::size_t n) {
  return {(n + 1) / 2, n / 2};
}

}  // namespace nqsfid
