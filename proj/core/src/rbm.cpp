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

#include "nqsfid/rbm.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nqsfid {

std::complex<double> log_two_cosh(std::complex<double> z) {
  // 2 cosh z = e^z (1 + e^{-2z}); pick the sign with Re z >= 0 so the
  // exponential cannot overflow.
  if (z.real() < 0.0) z = -z;
  return z + std::log(1.0 + std::exp(-2.0 * z));
}

double log_abs_two_cosh(std::complex<double> z) {
  const double x = std::abs(z.real());
  const double a = std::exp(-2.0 * x);
  // |1 + a e^{-2iy}|^2 = 1 + 2a cos 2y + a^2
  return x + 0.5 * std::log1p(a * (2.0 * std::cos(2.0 * z.imag()) + a));
}

std::size_t rbm_parameter_count(int num_sites, int hidden) {
  return 2 * static_cast<std::size_t>(num_sites) *
         static_cast<std::size_t>(hidden);
}

Rbm::Rbm(AnsatzParameters params) : params_(std::move(params)) {
  if (params_.kind != AnsatzKind::rbm) {
    throw std::invalid_argument("Rbm: parameters are not of kind rbm");
  }
  if (params_.num_sites < 1 || params_.num_sites > kMaxPackedSites ||
      params_.hidden < 1) {
    throw std::invalid_argument("Rbm: invalid architecture");
  }
  if (params_.values.size() !=
      rbm_parameter_count(params_.num_sites, params_.hidden)) {
    throw std::invalid_argument("Rbm: expected " +
                                std::to_string(rbm_parameter_count(
                                    params_.num_sites, params_.hidden)) +
                                " values, got " +
                                std::to_string(params_.values.size()));
  }
  for (double v : params_.values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("Rbm: non-finite parameter entry");
    }
  }
  const int m = params_.hidden;
  const int l = params_.num_sites;
  weights_.resize(m, l);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < l; ++i) {
      const std::size_t k = 2 * (static_cast<std::size_t>(j) * l + i);
      weights_(j, i) = {params_.values[k], params_.values[k + 1]};
    }
  }
}

Eigen::VectorXcd Rbm::theta(const SpinConfiguration& s) const {
  if (s.size() != num_sites()) {
    throw std::invalid_argument("Rbm: configuration length " +
                                std::to_string(s.size()) + " != L=" +
                                std::to_string(num_sites()));
  }
  Eigen::VectorXcd th = Eigen::VectorXcd::Zero(weights_.rows());
  for (int i = 0; i < num_sites(); ++i) {
    if (s.is_up(i)) {
      th += weights_.col(i);
    } else {
      th -= weights_.col(i);
    }
  }
  return th;
}

LogAmplitude Rbm::log_amplitude(const SpinConfiguration& s) const {
  const Eigen::VectorXcd th = theta(s);
  LogAmplitude out = 0.0;
  for (Eigen::Index j = 0; j < th.size(); ++j) out += log_two_cosh(th[j]);
  return out;
}

namespace {

// Keeps the pre-activations and tanh(theta_j) of the current configuration.
// A flip shifts theta_j by d = -+2 W_ji, and
//   cosh(theta + d) / cosh(theta) = cosh d + tanh(theta) sinh d,
// so a proposal costs M complex multiply-adds and no transcendentals. The
// cached state is recomputed exactly every L accepted flips.
// Plain complex product and quotient; std::complex operators go through the
// slow Annex G helpers. Non-finite results are caught by refresh().
inline std::complex<double> mul(std::complex<double> a,
                                std::complex<double> b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

inline std::complex<double> div(std::complex<double> a,
                                std::complex<double> b) {
  const double d = b.real() * b.real() + b.imag() * b.imag();
  return {(a.real() * b.real() + a.imag() * b.imag()) / d,
          (a.imag() * b.real() - a.real() * b.imag()) / d};
}

class RbmWalker final : public MarkovWalker {
 public:
  RbmWalker(const Rbm& rbm, const SpinConfiguration& start)
      : weights_(rbm.weights()),
        cosh_shift_((2.0 * weights_).array().cosh().matrix()),
        sinh_shift_((2.0 * weights_).array().sinh().matrix()),
        config_(start),
        theta_(rbm.theta(start)),
        tanh_(theta_.size()),
        ratio_(theta_.size()) {
    refresh();
  }

  const SpinConfiguration& config() const override { return config_; }
  double log_magnitude() const override { return log_magnitude_; }

  double propose(int site) override {
    const double sign = config_.at(site) ? -1.0 : 1.0;
    if (!cached_) {
      proposed_ = sum_log_abs(theta_ + 2.0 * sign * weights_.col(site));
      return proposed_;
    }
    double product = 1.0;
    double log_scale = 0.0;
    for (Eigen::Index j = 0; j < theta_.size(); ++j) {
      const std::complex<double> r =
          cosh_shift_(j, site) + sign * mul(tanh_[j], sinh_shift_(j, site));
      ratio_[j] = r;
      product *= std::norm(r);
      if (product == 0.0) {
        proposed_ = -std::numeric_limits<double>::infinity();
        return proposed_;
      }
      if (product > 1e100 || product < 1e-100) {
        log_scale += std::log(product);
        product = 1.0;
      }
    }
    proposed_ = log_magnitude_ + 0.5 * (log_scale + std::log(product));
    return proposed_;
  }

  void accept(int site) override {
    const double sign = config_.at(site) ? -1.0 : 1.0;
    config_.flip_in_place(site);
    for (Eigen::Index j = 0; j < theta_.size(); ++j) {
      theta_[j] += 2.0 * sign * weights_(j, site);
    }
    if (!cached_ || ++accepted_since_refresh_ >= config_.size()) {
      refresh();
      return;
    }
    for (Eigen::Index j = 0; j < theta_.size(); ++j) {
      tanh_[j] = div(mul(tanh_[j], cosh_shift_(j, site)) +
                         sign * sinh_shift_(j, site),
                     ratio_[j]);
    }
    log_magnitude_ = proposed_;
  }

 private:
  static double sum_log_abs(const Eigen::VectorXcd& th) {
    double out = 0.0;
    for (Eigen::Index j = 0; j < th.size(); ++j) {
      out += log_abs_two_cosh(th[j]);
    }
    return out;
  }

  void refresh() {
    accepted_since_refresh_ = 0;
    log_magnitude_ = sum_log_abs(theta_);
    cached_ = std::isfinite(log_magnitude_);
    for (Eigen::Index j = 0; j < theta_.size() && cached_; ++j) {
      tanh_[j] = std::tanh(theta_[j]);
      cached_ = std::isfinite(tanh_[j].real()) && std::isfinite(tanh_[j].imag());
    }
    cached_ = cached_ && cosh_shift_.allFinite() && sinh_shift_.allFinite();
  }

  const Eigen::MatrixXcd& weights_;
  const Eigen::MatrixXcd cosh_shift_;  // cosh(2 W)
  const Eigen::MatrixXcd sinh_shift_;  // sinh(2 W)
  SpinConfiguration config_;
  Eigen::VectorXcd theta_;
  Eigen::VectorXcd tanh_;
  Eigen::VectorXcd ratio_;
  double log_magnitude_ = 0.0;
  double proposed_ = 0.0;
  int accepted_since_refresh_ = 0;
  bool cached_ = false;
};

}  // namespace

std::unique_ptr<MarkovWalker> Rbm::make_walker(
    const SpinConfiguration& start) const {
  return std::make_unique<RbmWalker>(*this, start);
}

}  // namespace nqsfid
