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

#include "nqsfid/arnn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nqsfid {

double wrap_phase(double phase) {
  double r = std::remainder(phase, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

std::size_t arnn_parameter_count(int hidden, int depth) {
  const std::size_t h = static_cast<std::size_t>(hidden);
  std::size_t count = 0;
  for (int d = 0; d < depth; ++d) {
    count += h * h + h * (d == 0 ? 2 : h) + h;
  }
  return count + 4 * h + 4;
}

Arnn::Arnn(AnsatzParameters params) : params_(std::move(params)) {
  if (params_.kind != AnsatzKind::arnn) {
    throw std::invalid_argument("Arnn: parameters are not of kind arnn");
  }
  if (params_.num_sites < 1 || params_.num_sites > kMaxPackedSites ||
      params_.hidden < 1 || params_.depth < 1) {
    throw std::invalid_argument("Arnn: invalid architecture");
  }
  const int h = params_.hidden;
  const std::size_t expected = arnn_parameter_count(h, params_.depth);
  if (params_.values.size() != expected) {
    throw std::invalid_argument("Arnn: expected " + std::to_string(expected) +
                                " values, got " +
                                std::to_string(params_.values.size()));
  }
  for (double v : params_.values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("Arnn: non-finite parameter entry");
    }
  }

  std::size_t k = 0;
  auto take_matrix = [&](int rows, int cols) {
    Eigen::MatrixXd m(rows, cols);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) m(r, c) = params_.values[k++];
    }
    return m;
  };
  auto take_vector = [&](int size) {
    Eigen::VectorXd v(size);
    for (int r = 0; r < size; ++r) v[r] = params_.values[k++];
    return v;
  };
  layers_.reserve(params_.depth);
  for (int d = 0; d < params_.depth; ++d) {
    Layer layer;
    layer.recurrent = take_matrix(h, h);
    layer.input = take_matrix(h, d == 0 ? 2 : h);
    layer.bias = take_vector(h);
    layers_.push_back(std::move(layer));
  }
  head_weights_ = take_matrix(4, h);
  head_bias_ = take_vector(4);
}

class Arnn::Cursor final : public ConditionalCursor {
 public:
  explicit Cursor(const Arnn& net)
      : net_(net),
        hidden_(net.layers_.size(),
                Eigen::VectorXd::Zero(net.params_.hidden)),
        pre_(net.params_.hidden),
        input_(2) {
    reset();
  }

  void reset() override {
    for (auto& h : hidden_) h.setZero();
    position_ = 0;
    log_amplitude_ = 0.0;
    input_.setZero();
    step();
  }

  int position() const override { return position_; }

  const Conditionals& current() const override {
    if (position_ >= net_.num_sites()) {
      throw std::logic_error("ConditionalCursor: all sites already fixed");
    }
    return current_;
  }

  void advance(bool up) override {
    if (position_ >= net_.num_sites()) {
      throw std::logic_error("ConditionalCursor: advance past last site");
    }
    const int k = up ? 0 : 1;
    log_amplitude_ += LogAmplitude(0.5 * current_.log_probabilities[k],
                                   current_.phases[k]);
    ++position_;
    if (position_ < net_.num_sites()) {
      input_[0] = up ? 1.0 : 0.0;
      input_[1] = up ? 0.0 : 1.0;
      step();
    }
  }

  LogAmplitude log_amplitude() const override { return log_amplitude_; }

 private:
  // out += m * v for a column-major m, four columns per pass.
  static void accumulate(const Eigen::MatrixXd& m, const Eigen::VectorXd& v,
                         Eigen::VectorXd& out) {
    const Eigen::Index rows = m.rows();
    const Eigen::Index cols = m.cols();
    double* __restrict o = out.data();
    const double* __restrict a = m.data();
    Eigen::Index c = 0;
    for (; c + 4 <= cols; c += 4) {
      const double v0 = v[c];
      const double v1 = v[c + 1];
      const double v2 = v[c + 2];
      const double v3 = v[c + 3];
      const double* __restrict c0 = a + c * rows;
      for (Eigen::Index r = 0; r < rows; ++r) {
        o[r] += c0[r] * v0 + c0[r + rows] * v1 + c0[r + 2 * rows] * v2 +
                c0[r + 3 * rows] * v3;
      }
    }
    for (; c < cols; ++c) {
      const double vc = v[c];
      const double* __restrict col = a + c * rows;
      for (Eigen::Index r = 0; r < rows; ++r) o[r] += col[r] * vc;
    }
  }

  // Runs every layer for the current site and refreshes the conditionals.
  void step() {
    const Eigen::VectorXd* x = &input_;
    for (std::size_t d = 0; d < hidden_.size(); ++d) {
      const Layer& layer = net_.layers_[d];
      // Column axpy loops; Eigen's blocked gemv is slow at H ~ 16.
      pre_ = layer.bias;
      accumulate(layer.recurrent, hidden_[d], pre_);
      accumulate(layer.input, *x, pre_);
      double* h = hidden_[d].data();
      for (Eigen::Index r = 0; r < pre_.size(); ++r) {
        h[r] = pre_[r] > 0.0 ? pre_[r] : std::expm1(pre_[r]);  // ELU
      }
      x = &hidden_[d];
    }
    const Eigen::Vector4d out =
        net_.head_weights_ * hidden_.back() + net_.head_bias_;
    const double hi = std::max(out[0], out[1]);
    const double lo = std::min(out[0], out[1]);
    const double lse = hi + std::log1p(std::exp(lo - hi));
    current_.log_probabilities = {out[0] - lse, out[1] - lse};
    current_.phases = {wrap_phase(out[2]), wrap_phase(out[3])};
  }

  const Arnn& net_;
  std::vector<Eigen::VectorXd> hidden_;
  Eigen::VectorXd pre_;
  Eigen::VectorXd input_;
  Conditionals current_;
  int position_ = 0;
  LogAmplitude log_amplitude_ = 0.0;
};

std::unique_ptr<ConditionalCursor> Arnn::make_cursor() const {
  return std::make_unique<Cursor>(*this);
}

Conditionals Arnn::conditionals(const SpinConfiguration& config,
                                int prefix_length) const {
  if (prefix_length < 0 || prefix_length >= num_sites()) {
    throw std::invalid_argument("Arnn::conditionals: prefix length " +
                                std::to_string(prefix_length) +
                                " outside [0, L-1] for L=" +
                                std::to_string(num_sites()));
  }
  if (config.size() < prefix_length) {
    throw std::invalid_argument("Arnn::conditionals: prefix source too short");
  }
  Cursor cursor(*this);
  for (int i = 0; i < prefix_length; ++i) cursor.advance(config.is_up(i));
  return cursor.current();
}

LogAmplitude Arnn::log_amplitude(const SpinConfiguration& s) const {
  if (s.size() != num_sites()) {
    throw std::invalid_argument("Arnn: configuration length " +
                                std::to_string(s.size()) + " != L=" +
                                std::to_string(num_sites()));
  }
  Cursor cursor(*this);
  for (int i = 0; i < num_sites(); ++i) cursor.advance(s.is_up(i));
  return cursor.log_amplitude();
}

}  // namespace nqsfid
