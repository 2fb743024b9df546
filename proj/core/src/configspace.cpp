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

#include "nqsfid/configspace.hpp"

#include <bit>
#include <stdexcept>

namespace nqsfid {

namespace {

void check_num_sites(int num_sites) {
  if (num_sites < 1 || num_sites > kMaxPackedSites) {
    throw std::invalid_argument("site count " + std::to_string(num_sites) +
                                " outside [1, " +
                                std::to_string(kMaxPackedSites) + "]");
  }
}

}  // namespace

SpinConfiguration::SpinConfiguration(int num_sites) : num_sites_(num_sites) {
  check_num_sites(num_sites);
}

SpinConfiguration SpinConfiguration::from_index(std::uint64_t index,
                                                int num_sites) {
  check_num_sites(num_sites);
  if (index >> num_sites) {
    throw std::invalid_argument("basis index " + std::to_string(index) +
                                " does not fit in " +
                                std::to_string(num_sites) + " sites");
  }
  return SpinConfiguration(index, num_sites);
}

SpinConfiguration SpinConfiguration::from_spins(
    std::initializer_list<int> spins) {
  SpinConfiguration config(static_cast<int>(spins.size()));
  int site = 0;
  for (int s : spins) {
    if (s != 1 && s != -1) {
      throw std::invalid_argument("spin values must be +1 or -1");
    }
    config.set(site++, s == 1);
  }
  return config;
}

void SpinConfiguration::check_site(int site) const {
  if (site < 0 || site >= num_sites_) {
    throw std::out_of_range("site " + std::to_string(site) +
                            " out of range for L=" +
                            std::to_string(num_sites_));
  }
}

bool SpinConfiguration::at(int site) const {
  check_site(site);
  return is_up(site);
}

void SpinConfiguration::set(int site, bool up) {
  check_site(site);
  const std::uint64_t mask = std::uint64_t{1} << site;
  bits_ = up ? (bits_ | mask) : (bits_ & ~mask);
}

void SpinConfiguration::flip_in_place(int site) {
  check_site(site);
  bits_ ^= std::uint64_t{1} << site;
}

std::string SpinConfiguration::to_string() const {
  std::string out;
  out.reserve(num_sites_);
  for (int i = 0; i < num_sites_; ++i) out.push_back(is_up(i) ? 'u' : 'd');
  return out;
}

std::uint64_t pack(const SpinConfiguration& config) { return config.index(); }

SpinConfiguration unpack(std::uint64_t index, int num_sites) {
  return SpinConfiguration::from_index(index, num_sites);
}

SpinConfiguration flip(const SpinConfiguration& config, int site) {
  SpinConfiguration out = config;
  out.flip_in_place(site);
  return out;
}

int hamming_distance(const SpinConfiguration& a, const SpinConfiguration& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("hamming_distance: length mismatch");
  }
  return std::popcount(a.index() ^ b.index());
}

BasisRange::BasisRange(int num_sites)
    : num_sites_(num_sites), count_(std::uint64_t{1} << num_sites) {}

BasisRange enumerate_basis(int num_sites) {
  if (num_sites < 1 || num_sites > kMaxEnumerationSites) {
    throw std::invalid_argument(
        "refusing to enumerate 2^" + std::to_string(num_sites) +
        " states; full-basis enumeration supports 1 <= L <= " +
        std::to_string(kMaxEnumerationSites));
  }
  return BasisRange(num_sites);
}

}  // namespace nqsfid
