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

#include "nqsfid/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nqsfid/summation.hpp"

namespace nqsfid {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_same_length(const Ansatz& a, const Ansatz& b) {
  if (a.num_sites() != b.num_sites()) {
    throw std::invalid_argument("oracle: ansaetze have different site counts");
  }
}

double max_log_magnitude(const std::vector<LogAmplitude>& logs) {
  double m = kNegInf;
  for (const auto& l : logs) m = std::max(m, l.real());
  if (m == kNegInf) {
    throw std::domain_error("oracle: every amplitude is zero");
  }
  return m;
}

template <typename Body>
void for_each_index(std::size_t count, EnumerationOrder order, Body&& body) {
  if (order == EnumerationOrder::forward) {
    for (std::size_t k = 0; k < count; ++k) body(k);
  } else {
    for (std::size_t k = count; k-- > 0;) body(k);
  }
}

double log_norm_of(const std::vector<LogAmplitude>& logs,
                   EnumerationOrder order) {
  const double m = max_log_magnitude(logs);
  CompensatedSum sum;
  for_each_index(logs.size(), order, [&](std::size_t k) {
    sum.add(std::exp(2.0 * (logs[k].real() - m)));
  });
  return 2.0 * m + std::log(sum.value());
}

std::complex<double> overlap_of(const std::vector<LogAmplitude>& psi,
                                const std::vector<LogAmplitude>& phi,
                                EnumerationOrder order) {
  const double m_psi = max_log_magnitude(psi);
  const double m_phi = max_log_magnitude(phi);
  ComplexCompensatedSum cross;
  CompensatedSum norm_psi;
  CompensatedSum norm_phi;
  for_each_index(psi.size(), order, [&](std::size_t k) {
    const LogAmplitude a = psi[k] - m_psi;
    const LogAmplitude b = phi[k] - m_phi;
    norm_psi.add(std::exp(2.0 * a.real()));
    norm_phi.add(std::exp(2.0 * b.real()));
    if (a.real() == kNegInf || b.real() == kNegInf) return;
    cross.add(std::exp(a + std::conj(b)));
  });
  return cross.value() / std::sqrt(norm_psi.value() * norm_phi.value());
}

// Mean and variance of numerator/denominator under |denominator|^2/N.
void ratio_moments(const std::vector<LogAmplitude>& numerator,
                   const std::vector<LogAmplitude>& denominator,
                   double log_norm_denominator, std::complex<double>& mean,
                   double& variance) {
  ComplexCompensatedSum first;
  CompensatedSum second;
  for (std::size_t k = 0; k < numerator.size(); ++k) {
    if (denominator[k].real() == kNegInf) continue;  // probability zero
    const double p = std::exp(2.0 * denominator[k].real() -
                              log_norm_denominator);
    if (numerator[k].real() == kNegInf) continue;  // ratio zero
    const std::complex<double> ratio = std::exp(numerator[k] - denominator[k]);
    first.add(p * ratio);
    second.add(p * std::norm(ratio));
  }
  mean = first.value();
  variance = second.value() - std::norm(mean);
}

}  // namespace

std::vector<LogAmplitude> enumerate_log_amplitudes(const Ansatz& ansatz) {
  const BasisRange basis = enumerate_basis(ansatz.num_sites());
  std::vector<LogAmplitude> out;
  out.reserve(basis.size());
  for (const SpinConfiguration& s : basis) {
    out.push_back(ansatz.log_amplitude(s));
  }
  return out;
}

double exact_log_norm(const Ansatz& ansatz, EnumerationOrder order) {
  return log_norm_of(enumerate_log_amplitudes(ansatz), order);
}

double exact_norm(const Ansatz& ansatz, EnumerationOrder order) {
  return std::exp(exact_log_norm(ansatz, order));
}

std::complex<double> exact_overlap(const Ansatz& psi, const Ansatz& phi,
                                   EnumerationOrder order) {
  check_same_length(psi, phi);
  return overlap_of(enumerate_log_amplitudes(psi),
                    enumerate_log_amplitudes(phi), order);
}

std::complex<double> overlap_from_log_amplitudes(
    const std::vector<LogAmplitude>& psi, const std::vector<LogAmplitude>& phi,
    EnumerationOrder order) {
  if (psi.size() != phi.size() || psi.empty()) {
    throw std::invalid_argument("overlap: log-amplitude tables differ in size");
  }
  return overlap_of(psi, phi, order);
}

double exact_fidelity(const Ansatz& psi, const Ansatz& phi) {
  return std::norm(exact_overlap(psi, phi));
}

std::vector<double> exact_probabilities(const Ansatz& ansatz) {
  const auto logs = enumerate_log_amplitudes(ansatz);
  const double log_norm = log_norm_of(logs, EnumerationOrder::forward);
  std::vector<double> p(logs.size());
  for (std::size_t k = 0; k < logs.size(); ++k) {
    p[k] = std::exp(2.0 * logs[k].real() - log_norm);
  }
  return p;
}

RatioMoments exact_var_ratios(const Ansatz& psi, const Ansatz& phi) {
  check_same_length(psi, phi);
  const auto lpsi = enumerate_log_amplitudes(psi);
  const auto lphi = enumerate_log_amplitudes(phi);
  RatioMoments out;
  ratio_moments(lpsi, lphi, log_norm_of(lphi, EnumerationOrder::forward),
                out.mean_z, out.var_z);
  ratio_moments(lphi, lpsi, log_norm_of(lpsi, EnumerationOrder::forward),
                out.mean_w, out.var_w);
  return out;
}

ExactSummary exact_summary(const Ansatz& psi, const Ansatz& phi) {
  check_same_length(psi, phi);
  const auto lpsi = enumerate_log_amplitudes(psi);
  const auto lphi = enumerate_log_amplitudes(phi);
  ExactSummary out;
  out.log_norm_psi = log_norm_of(lpsi, EnumerationOrder::forward);
  out.log_norm_phi = log_norm_of(lphi, EnumerationOrder::forward);
  out.norm_psi = std::exp(out.log_norm_psi);
  out.norm_phi = std::exp(out.log_norm_phi);
  out.overlap = overlap_of(lpsi, lphi, EnumerationOrder::forward);
  out.fidelity = std::norm(out.overlap);
  std::complex<double> mean;
  ratio_moments(lpsi, lphi, out.log_norm_phi, mean, out.var_z_exact);
  ratio_moments(lphi, lpsi, out.log_norm_psi, mean, out.var_w_exact);
  return out;
}

}  // namespace nqsfid
