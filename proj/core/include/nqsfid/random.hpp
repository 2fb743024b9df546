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

#ifndef NQSFID_RANDOM_HPP
#define NQSFID_RANDOM_HPP

#include <cstdint>
#include <random>

namespace nqsfid {

// Seeded, splittable random stream. Draws are defined bit-for-bit on every
// platform: the engine is std::mt19937_64 (fully specified by the standard)
// and all derived draws use explicit integer arithmetic rather than the
// implementation-defined std:: distributions.
//
// split(i) derives an independent child stream whose key depends only on the
// parent key and i, so every chain or repetition can own its own substream.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed);

  // Rebuilds a stream from a key() value.
  static RandomStream from_key(std::uint64_t key);

  RandomStream split(std::uint64_t index) const;

  std::uint64_t key() const { return key_; }

  std::uint64_t operator()() { return engine_(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on [lo, hi).
  double uniform(double lo, double hi);
  // Uniform integer in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  // Standard normal via Box-Muller.
  double normal();

 private:
  struct FromKey {};
  RandomStream(FromKey, std::uint64_t key);

  std::uint64_t key_;
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used for key derivation.
std::uint64_t mix64(std::uint64_t x);

}  // namespace nqsfid

#endif  // NQSFID_RANDOM_HPP
