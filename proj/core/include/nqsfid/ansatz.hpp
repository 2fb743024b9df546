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

#ifndef NQSFID_ANSATZ_HPP
#define NQSFID_ANSATZ_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nqsfid/configspace.hpp"
#include "nqsfid/random.hpp"

namespace nqsfid {

// log psi(s): real part is the log-magnitude, imaginary part the phase.
// An amplitude of exactly zero has real part -infinity.
using LogAmplitude = std::complex<double>;

enum class AnsatzKind { rbm, arnn };

std::string_view to_string(AnsatzKind kind);
// Accepts "rbm" or "arnn"; throws std::invalid_argument otherwise.
AnsatzKind parse_ansatz_kind(std::string_view name);

enum class WeightInit {
  // Entries drawn from [0, scale] (default).
  nonnegative,
  // Entries drawn from [-scale, scale].
  symmetric,
};

std::string_view to_string(WeightInit init);
WeightInit parse_weight_init(std::string_view name);

// Flat real parameter vector plus the architecture descriptor needed to
// rebuild the network.
//
// rbm:  hidden = M, depth unused. values = [Re W_00, Im W_00, Re W_01, ...]
//       for the M x L weight matrix in row-major order.
// arnn: hidden = H, depth = D. See arnn.hpp for the layout.
struct AnsatzParameters {
  AnsatzKind kind = AnsatzKind::rbm;
  int num_sites = 0;
  int hidden = 0;
  int depth = 0;
  std::uint64_t seed = 0;
  std::vector<double> values;

  friend bool operator==(const AnsatzParameters&,
                         const AnsatzParameters&) = default;
};

// Incremental evaluation state for single-spin-flip Markov chains. Only the
// log-magnitude is needed for the acceptance test.
class MarkovWalker {
 public:
  virtual ~MarkovWalker() = default;

  virtual const SpinConfiguration& config() const = 0;
  // Re log psi of the current configuration.
  virtual double log_magnitude() const = 0;
  // Re log psi(flip(config(), site)); -infinity for a zero amplitude.
  virtual double propose(int site) = 0;
  // Commits the flip evaluated by the most recent propose(site).
  virtual void accept(int site) = 0;
};

// Amplitude-evaluation interface shared by every neural quantum state.
// Implementations are immutable and safe for concurrent const use.
class Ansatz {
 public:
  virtual ~Ansatz() = default;

  virtual int num_sites() const = 0;
  // True iff sum_s |psi(s)|^2 = 1 by construction.
  virtual bool is_normalized() const = 0;
  virtual LogAmplitude log_amplitude(const SpinConfiguration& s) const = 0;
  virtual const AnsatzParameters& parameters() const = 0;

  // Default walker re-evaluates log_amplitude on every proposal.
  virtual std::unique_ptr<MarkovWalker> make_walker(
      const SpinConfiguration& start) const;
};

// Conditional distribution of one site given the preceding ones. Index 0 is
// up, index 1 is down.
struct Conditionals {
  std::array<double, 2> log_probabilities{};
  std::array<double, 2> phases{};  // in (-pi, pi]

  std::array<double, 2> probabilities() const;
};

// Walks an autoregressive network site by site. Each advance() appends the
// realized spin and accumulates its contribution to log psi.
class ConditionalCursor {
 public:
  virtual ~ConditionalCursor() = default;

  virtual void reset() = 0;
  // Number of sites already fixed.
  virtual int position() const = 0;
  // Conditionals for site position(); requires position() < L.
  virtual const Conditionals& current() const = 0;
  virtual void advance(bool up) = 0;
  // Sum over fixed sites of log P(s_i|prefix)/2 + i*phase(s_i).
  virtual LogAmplitude log_amplitude() const = 0;
};

class AutoregressiveAnsatz : public Ansatz {
 public:
  bool is_normalized() const override { return true; }

  // Conditionals of site `prefix_length` given sites [0, prefix_length) of
  // `config`. Throws std::invalid_argument unless 0 <= prefix_length < L.
  virtual Conditionals conditionals(const SpinConfiguration& config,
                                    int prefix_length) const = 0;

  virtual std::unique_ptr<ConditionalCursor> make_cursor() const = 0;
};

// Adds a constant complex offset to log psi of a wrapped ansatz, i.e.
// multiplies every amplitude by e^offset.
class ScaledAnsatz final : public Ansatz {
 public:
  ScaledAnsatz(std::shared_ptr<const Ansatz> inner, LogAmplitude offset);

  int num_sites() const override { return inner_->num_sites(); }
  bool is_normalized() const override;
  LogAmplitude log_amplitude(const SpinConfiguration& s) const override;
  const AnsatzParameters& parameters() const override {
    return inner_->parameters();
  }

  LogAmplitude offset() const { return offset_; }

 private:
  std::shared_ptr<const Ansatz> inner_;
  LogAmplitude offset_;
};

struct Architecture {
  // 0 selects the default: 32 hidden units (rbm) or hidden size 16 (arnn).
  int hidden = 0;
  // Recurrent depth (arnn only).
  int depth = 4;
  WeightInit weight_init = WeightInit::nonnegative;

  friend bool operator==(const Architecture&, const Architecture&) = default;
};

// Random parameters, deterministic in `seed`.
//  rbm:  Re and Im of every weight uniform on [0, 0.01] (symmetric: [-0.01,
//        0.01]).
//  arnn: every weight matrix with fan-in a and fan-out b uniform on
//        [0, 1/sqrt((a+b)/2)] (symmetric: +-); biases zero.
AnsatzParameters init_random(AnsatzKind kind, int num_sites,
                             std::uint64_t seed, const Architecture& arch = {});

// params + t * direction. Throws std::invalid_argument on dimension mismatch.
AnsatzParameters perturb(const AnsatzParameters& params,
                         std::span<const double> direction, double t);

// Uniformly distributed unit vector of the given dimension.
std::vector<double> random_unit_direction(std::size_t dimension,
                                          RandomStream& rng);

std::shared_ptr<const Ansatz> make_ansatz(const AnsatzParameters& params);

// Save/load: plain-text header followed by the values as little-endian
// IEEE-754 doubles. Throws std::runtime_error with the path on I/O failure.
void save_parameters(const std::string& path, const AnsatzParameters& params);
AnsatzParameters load_parameters(const std::string& path);

}  // namespace nqsfid

#endif  // NQSFID_ANSATZ_HPP
