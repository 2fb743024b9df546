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


#ifndef NQSFID_TESTS_TEST_SUPPORT_HPP
#define NQSFID_TESTS_TEST_SUPPORT_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "nqsfid/ansatz.hpp"
#include "nqsfid/sampling.hpp"

namespace nqsfid::testing {

// Ansatz defined by an explicit table of log-amplitudes in pack order.
class TableAnsatz final : public Ansatz {
 public:
  TableAnsatz(int num_sites, std::vector<LogAmplitude> table,
              bool normalized = false)
      : table_(std::move(table)), normalized_(normalized) {
    params_.kind = AnsatzKind::rbm;
    params_.num_sites = num_sites;
  }
  int num_sites() const override { return params_.num_sites; }
  bool is_normalized() const override { return normalized_; }
  LogAmplitude log_amplitude(const SpinConfiguration& s) const override {
    return table_.at(pack(s));
  }
  const AnsatzParameters& parameters() const override { return params_; }

 private:
  AnsatzParameters params_;
  std::vector<LogAmplitude> table_;
  bool normalized_;
};

inline LogAmplitude zero_amplitude() {
  return {-std::numeric_limits<double>::infinity(), 0.0};
}

inline std::vector<double> histogram(const SampleBatch& batch, int num_sites) {
  std::vector<double> h(std::size_t{1} << num_sites, 0.0);
  for (const auto& c : batch.configurations) h[pack(c)] += 1.0;
  for (double& v : h) v /= static_cast<double>(batch.size());
  return h;
}

inline double tv_distance(const std::vector<double>& p,
                          const std::vector<double>& q) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
  return 0.5 * sum;
}

}  // namespace nqsfid::testing

#endif  // NQSFID_TESTS_TEST_SUPPORT_HPP
