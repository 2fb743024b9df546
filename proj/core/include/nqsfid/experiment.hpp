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

#ifndef NQSFID_EXPERIMENT_HPP
#define NQSFID_EXPERIMENT_HPP

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "nqsfid/ansatz.hpp"
#include "nqsfid/estimator.hpp"
#include "nqsfid/oracle.hpp"
#include "nqsfid/sampling.hpp"

namespace nqsfid {

// Experiment description. Pair k uses initial-state stream
// RandomStream(seed).split(k) and targets fidelity
// fidelity_targets[k / pairs_per_target].
struct ExperimentSpec {
  AnsatzKind kind = AnsatzKind::rbm;
  int num_sites = 12;
  std::uint64_t samples = 16384;  // n; split n1 = n2 = n/2 in general mode
  int repetitions = 100;
  std::vector<double> fidelity_targets = {0.05, 0.15, 0.25, 0.35, 0.45,
                                          0.55, 0.65, 0.75, 0.85, 0.95};
  int pairs_per_target = 1;
  // Adds a pair with t = 0 (F = 1) after the targeted pairs.
  bool include_identity_pair = false;
  double delta = 0.32;
  std::uint64_t seed = 1;
  int bin_count = 50;
  // Unset: normalized for arnn, general for rbm.
  std::optional<EstimatorMode> mode;
  ChainSettings chain;
  Architecture architecture{0, 4, WeightInit::symmetric};
  // Accepted |F - target| when calibrating the perturbation size.
  double fidelity_tolerance = 0.004;
  // Window used by the scaling and size experiments.
  double window_lo = 0.45;
  double window_hi = 0.55;
  int workers = 0;  // 0: one per hardware thread

  EstimatorMode resolved_mode() const;
  double bin_width() const { return 1.0 / bin_count; }
  int pair_count() const;
  // Throws std::invalid_argument describing the first invalid field.
  void validate() const;

  friend bool operator==(const ExperimentSpec&,
                         const ExperimentSpec&) = default;
};

// Two states psi (parameters theta) and phi = perturb(theta, eta, t) for a
// seeded random unit direction eta.
struct StatePair {
  std::shared_ptr<const Ansatz> psi;
  std::shared_ptr<const Ansatz> phi;
  double perturbation = 0.0;
  std::uint64_t seed = 0;
  std::optional<ExactSummary> oracle;
};

StatePair generate_state_pair(AnsatzKind kind, int num_sites, double t,
                              std::uint64_t seed,
                              const Architecture& architecture = {},
                              bool with_oracle = true);

// Searches t so that the exact fidelity lies within `tolerance` of `target`
// (doubling to bracket, then bisection). target must lie in (0, 1).
StatePair generate_pair_with_fidelity(AnsatzKind kind, int num_sites,
                                      double target, std::uint64_t seed,
                                      const Architecture& architecture = {},
                                      double tolerance = 0.004);

struct PairInfo {
  int index = 0;
  std::uint64_t seed = 0;
  int num_sites = 0;
  double target_fidelity = 1.0;
  double perturbation = 0.0;
  ExactSummary oracle;

  friend bool operator==(const PairInfo&, const PairInfo&) = default;
};

// One Monte Carlo estimate together with its oracle reference.
struct EstimateRow {
  int pair = 0;
  int repetition = 0;
  std::uint64_t seed = 0;
  int num_sites = 0;
  std::uint64_t samples = 0;
  std::uint64_t n1 = 0;
  std::uint64_t n2 = 0;
  double oracle_fidelity = 0.0;
  std::complex<double> oracle_overlap;
  std::complex<double> y1;
  std::complex<double> y2;  // 0 in normalized mode
  double fidelity_estimate = 0.0;
  std::complex<double> overlap_estimate;
  double imag_residual = 0.0;
  double fidelity_error = 0.0;
  double overlap_error = 0.0;
  double acceptance_rate = 1.0;
  std::uint64_t ratio_overflows = 0;

  friend bool operator==(const EstimateRow&, const EstimateRow&) = default;
};

struct EstimateTable {
  ExperimentSpec spec;
  EstimatorMode mode = EstimatorMode::general;
  std::vector<PairInfo> pairs;
  std::vector<EstimateRow> estimates;  // ordered by (pair, repetition)

  friend bool operator==(const EstimateTable&,
                         const EstimateTable&) = default;
};

// Builds every state pair and runs spec.repetitions independent estimates
// per pair on a bounded worker pool. The result depends only on `spec`.
EstimateTable collect_estimates(const ExperimentSpec& spec);

// Single estimate with fresh samples; `rng` is consumed.
EstimateRow run_single_estimate(const StatePair& pair, EstimatorMode mode,
                                std::uint64_t samples,
                                const ChainSettings& chain,
                                RandomStream& rng);

// Chebyshev failure: error >= bound, except the degenerate 0 >= 0.
bool exceeds_bound(double error, double bound);

// The quantity whose variance the theory predicts: Y1 in normalized mode,
// Y1 Y2 in general mode.
std::complex<double> variance_quantity(const EstimateRow& row,
                                       EstimatorMode mode);
// (1-F)/n1 or Var(Y1 Y2) for the row's oracle fidelity and sample split.
double analytic_variance(const EstimateRow& row, EstimatorMode mode);

// Index of the fidelity bin holding f; F = 1 falls in the last bin.
int fidelity_bin(double f, int bin_count);

struct BinRow {
  int bin = 0;
  double fidelity_lo = 0.0;
  double fidelity_hi = 0.0;
  double fidelity_center = 0.0;
  std::uint64_t count = 0;
  std::uint64_t pairs = 0;
  double mean_fidelity_error = 0.0;
  double fidelity_error_spread = 0.0;
  double mean_overlap_error = 0.0;
  double overlap_error_spread = 0.0;
  // Mean over pairs of the per-pair sample variance E|X - mean X|^2.
  double empirical_variance = 0.0;
  // Same for Re X.
  double empirical_variance_real = 0.0;
  double analytic_variance = 0.0;
  double variance_standard_error = 0.0;
  double variance_real_standard_error = 0.0;
  // Fraction of estimates outside the Chebyshev radius: |Y1 - <phi|psi>| >=
  // eps (normalized) or |F_hat - F| >= eps' (general).
  double failure_rate = 0.0;
  std::uint64_t failures = 0;
  // Fraction of |F_hat - F| outside 2 eps sqrt(F) + eps^2 (normalized) or
  // overlap estimates outside the magnitude/phase region (general).
  double secondary_failure_rate = 0.0;
  double epsilon_prime_center = 0.0;
  double fidelity_halfwidth_center = 0.0;
  double epsilon_center = 0.0;
  // Bounds evaluated at each estimate's own oracle fidelity, averaged.
  double mean_fidelity_bound = 0.0;
  std::optional<double> mean_overlap_bound;  // normalized mode only

  friend bool operator==(const BinRow&, const BinRow&) = default;
};

struct BinnedResult {
  EstimateTable data;
  std::vector<BinRow> bins;  // populated bins only, ascending

  friend bool operator==(const BinnedResult&, const BinnedResult&) = default;
};

BinnedResult summarize_bins(const EstimateTable& data);

// Variance experiment: per-bin empirical variance against the analytic
// prediction.
BinnedResult run_variance_experiment(const ExperimentSpec& spec);
// Coverage and mean-error experiment.
BinnedResult run_bound_experiment(const ExperimentSpec& spec);

struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_standard_error = 0.0;

  friend bool operator==(const PowerLawFit&, const PowerLawFit&) = default;
};

// Least-squares fit of log y = intercept + slope log x. Requires >= 2 points.
PowerLawFit fit_power_law(const std::vector<double>& x,
                          const std::vector<double>& y);

struct ScalingRow {
  std::uint64_t samples = 0;
  std::uint64_t count = 0;
  double mean_fidelity_error = 0.0;
  double standard_error = 0.0;
  double epsilon_prime_mid = 0.0;  // bound at F = 0.5

  friend bool operator==(const ScalingRow&, const ScalingRow&) = default;
};

struct ScalingTable {
  ExperimentSpec spec;
  EstimatorMode mode = EstimatorMode::general;
  std::vector<PairInfo> pairs;
  std::vector<ScalingRow> rows;
  std::optional<PowerLawFit> fit;  // absent for a single-n grid
  std::vector<EstimateRow> estimates;

  friend bool operator==(const ScalingTable&, const ScalingTable&) = default;
};

// Mean |F_hat - F| against n over pairs whose oracle fidelity lies in
// [spec.window_lo, spec.window_hi]; pairs target the window midpoint.
ScalingTable run_scaling_experiment(const ExperimentSpec& spec,
                                    const std::vector<std::uint64_t>& n_grid);

struct SizeRow {
  int num_sites = 0;
  std::uint64_t count = 0;
  double mean_fidelity_error = 0.0;
  double standard_error = 0.0;
  double mean_oracle_fidelity = 0.0;
  double epsilon_prime_mid = 0.0;

  friend bool operator==(const SizeRow&, const SizeRow&) = default;
};

struct SizeTable {
  ExperimentSpec spec;
  EstimatorMode mode = EstimatorMode::general;
  std::vector<PairInfo> pairs;
  std::vector<SizeRow> rows;
  // max over pairs of rows of |e_a - e_b| / sqrt(se_a^2 + se_b^2).
  double max_pairwise_z = 0.0;
  std::vector<EstimateRow> estimates;

  friend bool operator==(const SizeTable&, const SizeTable&) = default;
};

SizeTable run_size_experiment(const ExperimentSpec& spec,
                              const std::vector<int>& l_grid);

}  // namespace nqsfid

#endif  // NQSFID_EXPERIMENT_HPP
