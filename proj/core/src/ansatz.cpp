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

#include "nqsfid/ansatz.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nqsfid/arnn.hpp"
#include "nqsfid/rbm.hpp"

namespace nqsfid {

std::string_view to_string(AnsatzKind kind) {
  switch (kind) {
    case AnsatzKind::rbm:
      return "rbm";
    case AnsatzKind::arnn:
      return "arnn";
  }
  return "unknown";
}

AnsatzKind parse_ansatz_kind(std::string_view name) {
  if (name == "rbm") return AnsatzKind::rbm;
  if (name == "arnn") return AnsatzKind::arnn;
  throw std::invalid_argument("unknown ansatz kind '" + std::string(name) +
                              "' (expected rbm or arnn)");
}

std::string_view to_string(WeightInit init) {
  return init == WeightInit::nonnegative ? "nonnegative" : "symmetric";
}

WeightInit parse_weight_init(std::string_view name) {
  if (name == "nonnegative") return WeightInit::nonnegative;
  if (name == "symmetric") return WeightInit::symmetric;
  throw std::invalid_argument("unknown weight init '" + std::string(name) +
                              "' (expected nonnegative or symmetric)");
}

namespace {

class GenericWalker final : public MarkovWalker {
 public:
  GenericWalker(const Ansatz& ansatz, const SpinConfiguration& start)
      : ansatz_(ansatz),
        config_(start),
        log_magnitude_(ansatz.log_amplitude(start).real()) {}

  const SpinConfiguration& config() const override { return config_; }
  double log_magnitude() const override { return log_magnitude_; }

  double propose(int site) override {
    proposed_ = ansatz_.log_amplitude(flip(config_, site)).real();
    return proposed_;
  }

  void accept(int site) override {
    config_.flip_in_place(site);
    log_magnitude_ = proposed_;
  }

 private:
  const Ansatz& ansatz_;
  SpinConfiguration config_;
  double log_magnitude_;
  double proposed_ = 0.0;
};

}  // namespace

std::unique_ptr<MarkovWalker> Ansatz::make_walker(
    const SpinConfiguration& start) const {
  return std::make_unique<GenericWalker>(*this, start);
}

std::array<double, 2> Conditionals::probabilities() const {
  return {std::exp(log_probabilities[0]), std::exp(log_probabilities[1])};
}

ScaledAnsatz::ScaledAnsatz(std::shared_ptr<const Ansatz> inner,
                           LogAmplitude offset)
    : inner_(std::move(inner)), offset_(offset) {
  if (!inner_) throw std::invalid_argument("ScaledAnsatz: null ansatz");
  if (!std::isfinite(offset.real()) || !std::isfinite(offset.imag())) {
    throw std::invalid_argument("ScaledAnsatz: non-finite offset");
  }
}

bool ScaledAnsatz::is_normalized() const {
  return inner_->is_normalized() && offset_.real() == 0.0;
}

LogAmplitude ScaledAnsatz::log_amplitude(const SpinConfiguration& s) const {
  return inner_->log_amplitude(s) + offset_;
}

AnsatzParameters init_random(AnsatzKind kind, int num_sites,
                             std::uint64_t seed, const Architecture& arch) {
  if (num_sites < 1 || num_sites > kMaxPackedSites) {
    throw std::invalid_argument("init_random: invalid site count");
  }
  AnsatzParameters p;
  p.kind = kind;
  p.num_sites = num_sites;
  p.seed = seed;
  RandomStream rng(seed);
  const bool symmetric = arch.weight_init == WeightInit::symmetric;
  auto draw = [&](double scale) {
    return symmetric ? rng.uniform(-scale, scale) : rng.uniform(0.0, scale);
  };

  if (kind == AnsatzKind::rbm) {
    p.hidden = arch.hidden > 0 ? arch.hidden : kDefaultRbmHidden;
    p.depth = 1;
    p.values.resize(rbm_parameter_count(num_sites, p.hidden));
    for (double& v : p.values) v = draw(0.01);
    return p;
  }

  p.hidden = arch.hidden > 0 ? arch.hidden : kDefaultArnnHidden;
  p.depth = arch.depth;
  if (p.depth < 1) throw std::invalid_argument("init_random: depth < 1");
  const int h = p.hidden;
  p.values.reserve(arnn_parameter_count(h, p.depth));
  auto fill_matrix = [&](int rows, int cols) {
    const double scale = 1.0 / std::sqrt(0.5 * (rows + cols));
    for (int k = 0; k < rows * cols; ++k) p.values.push_back(draw(scale));
  };
  for (int d = 0; d < p.depth; ++d) {
    fill_matrix(h, h);
    fill_matrix(h, d == 0 ? 2 : h);
    p.values.insert(p.values.end(), h, 0.0);
  }
  fill_matrix(4, h);
  p.values.insert(p.values.end(), 4, 0.0);
  return p;
}

AnsatzParameters perturb(const AnsatzParameters& params,
                         std::span<const double> direction, double t) {
  if (direction.size() != params.values.size()) {
    throw std::invalid_argument(
        "perturb: direction has dimension " +
        std::to_string(direction.size()) + ", parameters have " +
        std::to_string(params.values.size()));
  }
  AnsatzParameters out = params;
  if (t == 0.0) return out;
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    out.values[k] += t * direction[k];
  }
  return out;
}

std::vector<double> random_unit_direction(std::size_t dimension,
                                          RandomStream& rng) {
  if (dimension == 0) {
    throw std::invalid_argument("random_unit_direction: zero dimension");
  }
  std::vector<double> v(dimension);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& x : v) {
      x = rng.normal();
      norm2 += x * x;
    }
  } while (norm2 == 0.0);
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& x : v) x *= inv;
  return v;
}

std::shared_ptr<const Ansatz> make_ansatz(const AnsatzParameters& params) {
  switch (params.kind) {
    case AnsatzKind::rbm:
      return std::make_shared<Rbm>(params);
    case AnsatzKind::arnn:
      return std::make_shared<Arnn>(params);
  }
  throw std::invalid_argument("make_ansatz: unknown kind");
}

}  // namespace nqsfid
