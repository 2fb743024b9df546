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

#ifndef NQSFID_ARNN_HPP
#define NQSFID_ARNN_HPP

#include <vector>

#include <Eigen/Dense>

#include "nqsfid/ansatz.hpp"

namespace nqsfid {

inline constexpr int kDefaultArnnHidden = 16;
inline constexpr int kDefaultArnnDepth = 4;

// Dense recurrent autoregressive network. At site i, with x_i the one-hot
// encoding of s_{i-1} (zero vector at i = 0):
//
//   h^1_i = ELU(A_1 h^1_{i-1} + B_1 x_i     + c_1)
//   h^d_i = ELU(A_d h^d_{i-1} + B_d h^{d-1}_i + c_d),   d = 2..D
//   o_i   = U h^D_i + u                               (4 outputs)
//
// o_i[0..1] are the logits of (up, down), o_i[2..3] their phases wrapped to
// (-pi, pi]. log psi(s) = sum_i log P(s_i|s_<i)/2 + i*phase_i(s_i), so the
// state is normalized exactly.
//
// Flat layout: for d = 1..D: A_d (H x H, row-major), B_d (H x in_d,
// row-major; in_1 = 2, otherwise H), c_d (H); then U (4 x H, row-major), u (4).
class Arnn final : public AutoregressiveAnsatz {
 public:
  explicit Arnn(AnsatzParameters params);

  int num_sites() const override { return params_.num_sites; }
  LogAmplitude log_amplitude(const SpinConfiguration& s) const override;
  const AnsatzParameters& parameters() const override { return params_; }

  Conditionals conditionals(const SpinConfiguration& config,
                            int prefix_length) const override;
  std::unique_ptr<ConditionalCursor> make_cursor() const override;

  int hidden_size() const { return params_.hidden; }
  int depth() const { return params_.depth; }

  struct Layer {
    Eigen::MatrixXd recurrent;  // A, H x H
    Eigen::MatrixXd input;      // B, H x in
    Eigen::VectorXd bias;       // c
  };
  const std::vector<Layer>& layers() const { return layers_; }
  const Eigen::MatrixXd& head_weights() const { return head_weights_; }
  const Eigen::VectorXd& head_bias() const { return head_bias_; }

 private:
  class Cursor;

  AnsatzParameters params_;
  std::vector<Layer> layers_;
  Eigen::MatrixXd head_weights_;  // 4 x H
  Eigen::VectorXd head_bias_;     // 4
};

std::size_t arnn_parameter_count(int hidden, int depth);

// Phase wrapped into (-pi, pi].
double wrap_phase(double phase);

}  // namespace nqsfid

#endif  // NQSFID_ARNN_HPP
