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

#ifndef NQSFID_RBM_HPP
#define NQSFID_RBM_HPP

#include <Eigen/Dense>

#include "nqsfid/ansatz.hpp"

namespace nqsfid {

// Numerically stable log(2 cosh z) for complex z; finite for |Re z| far
// beyond the overflow point of cosh.
std::complex<double> log_two_cosh(std::complex<double> z);
// Re log(2 cosh z) = log|2 cosh z|; -infinity where cosh z = 0.
double log_abs_two_cosh(std::complex<double> z);

// Bias-free restricted Boltzmann machine with complex weights:
//   psi(s) = prod_j 2 cosh(sum_i W_ji s_i),  s_i = +-1.
// Unnormalized.
class Rbm final : public Ansatz {
 public:
  // Throws std::invalid_argument for a parameter vector that is not rbm,
  // has the wrong size, or contains non-finite entries.
  explicit Rbm(AnsatzParameters params);

  int num_sites() const override { return params_.num_sites; }
  bool is_normalized() const override { return false; }
  LogAmplitude log_amplitude(const SpinConfiguration& s) const override;
  const AnsatzParameters& parameters() const override { return params_; }
  std::unique_ptr<MarkovWalker> make_walker(
      const SpinConfiguration& start) const override;

  int num_hidden() const { return params_.hidden; }
  const Eigen::MatrixXcd& weights() const { return weights_; }

  // Pre-activations theta_j = sum_i W_ji s_i.
  Eigen::VectorXcd theta(const SpinConfiguration& s) const;

 private:
  AnsatzParameters params_;
  Eigen::MatrixXcd weights_;  // M x L
};

inline constexpr int kDefaultRbmHidden = 32;

std::size_t rbm_parameter_count(int num_sites, int hidden);

}  // namespace nqsfid

#endif  // NQSFID_RBM_HPP
