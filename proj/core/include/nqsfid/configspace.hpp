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

#ifndef NQSFID_CONFIGSPACE_HPP
#define NQSFID_CONFIGSPACE_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <string>

namespace nqsfid {

// Largest chain length that still fits the 64-bit packing.
inline constexpr int kMaxPackedSites = 63;
// Largest chain length for which full-basis enumeration is allowed.
inline constexpr int kMaxEnumerationSites = 24;

// Configuration of L spin-1/2 sites, bit-packed. Bit i is set iff site i is
// up; site 0 is the least significant bit. Arithmetic spin values are +1 (up)
// and -1 (down).
class SpinConfiguration {
 public:
  SpinConfiguration() = default;

  // All sites down.
  explicit SpinConfiguration(int num_sites);

  // Inverse of pack(). Throws std::invalid_argument if num_sites is out of
  // range or index >= 2^num_sites.
  static SpinConfiguration from_index(std::uint64_t index, int num_sites);

  // Build from +1/-1 values, site 0 first.
  static SpinConfiguration from_spins(std::initializer_list<int> spins);

  int size() const { return num_sites_; }

  bool is_up(int site) const { return (bits_ >> site) & 1U; }
  int spin(int site) const { return is_up(site) ? 1 : -1; }

  std::uint64_t index() const { return bits_; }

  // Bounds-checked variants.
  bool at(int site) const;

  void set(int site, bool up);
  void flip_in_place(int site);

  std::string to_string() const;

  friend bool operator==(const SpinConfiguration&,
                         const SpinConfiguration&) = default;

 private:
  SpinConfiguration(std::uint64_t bits, int num_sites)
      : bits_(bits), num_sites_(num_sites) {}

  void check_site(int site) const;

  std::uint64_t bits_ = 0;
  int num_sites_ = 0;
};

std::uint64_t pack(const SpinConfiguration& config);
SpinConfiguration unpack(std::uint64_t index, int num_sites);

// Copy of `config` with `site` flipped. Throws std::out_of_range.
SpinConfiguration flip(const SpinConfiguration& config, int site);

int hamming_distance(const SpinConfiguration& a, const SpinConfiguration& b);

// Lazy range over all 2^L configurations in pack order.
class BasisRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = SpinConfiguration;
    using difference_type = std::ptrdiff_t;
    using pointer = const SpinConfiguration*;
    using reference = SpinConfiguration;

    iterator() = default;
    iterator(std::uint64_t index, int num_sites)
        : index_(index), num_sites_(num_sites) {}

    SpinConfiguration operator*() const {
      return SpinConfiguration::from_index(index_, num_sites_);
    }
    iterator& operator++() {
      ++index_;
      return *this;
    }
    iterator operator++(int) {
      iterator tmp = *this;
      ++index_;
      return tmp;
    }
    bool operator==(const iterator& other) const {
      return index_ == other.index_;
    }

   private:
    std::uint64_t index_ = 0;
    int num_sites_ = 0;
  };

  explicit BasisRange(int num_sites);

  iterator begin() const { return iterator(0, num_sites_); }
  iterator end() const { return iterator(count_, num_sites_); }
  std::uint64_t size() const { return count_; }
  int num_sites() const { return num_sites_; }

 private:
  int num_sites_;
  std::uint64_t count_;
};

// Refuses num_sites > kMaxEnumerationSites with std::invalid_argument.
BasisRange enumerate_basis(int num_sites);

}  // namespace nqsfid

#endif  // NQSFID_CONFIGSPACE_HPP
