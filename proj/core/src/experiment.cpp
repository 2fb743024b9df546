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

#include "nqsfid/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nqsfid/arnn.hpp"
#include "nqsfid/bounds.hpp"
#include "nqsfid/parallel.hpp"

namespace nqsfid {

EstimatorMode ExperimentSpec::resolved_mode() const {
  if (mode) return *mode;
  return kind == AnsatzKind::arnn ? EstimatorMode::normalized
                                  : EstimatorMode::general;
}

int ExperimentSpec::pair_count() const {
  return static_cast<int>(fidelity_targets.size()) * pairs_per_target +
         (include_identity_pair ? 1 : 0);
}

void ExperimentSpec::validate() const {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("experiment: " + what);
  };
  if (num_sites < 1 || num_sites > kMaxEnumerationSites) {
    fail("length must lie in [1, " + std::to_string(kMaxEnumerationSites) +
         "] so the exact oracle is available");
  }
  if (samples < 2) fail("samples must be at least 2");
  if (repetitions < 1) fail("repetitions must be positive");
  if (pairs_per_target < 1) fail("pairs per target must be positive");
  for (double f : fidelity_targets) {
    if (!(f > 0.0 && f < 1.0)) fail("fidelity targets must lie in (0, 1)");
  }
  if (pair_count() < 1) fail("no state pairs requested");
  if (!(delta > 0.0 && delta < 1.0)) fail("delta must lie in (0, 1)");
  if (bin_count < 1) fail("bin count must be positive");
  if (!(fidelity_tolerance > 0.0)) fail("fidelity tolerance must be > 0");
  if (!(window_lo < window_hi)) fail("empty fidelity window");
  if (resolved_mode() == EstimatorMode::normalized &&
      kind != AnsatzKind::arnn) {
    fail("normalized mode needs a normalized (arnn) ansatz");
  }
  if (chain.chains < 1 || chain.burn_in_sweeps < 0 ||
      chain.sweeps_per_sample < 1 || chain.steps_per_sweep < 0) {
    fail("invalid chain settings");
  }
}

StatePair generate_state_pair(AnsatzKind kind, int num_sites, double t,
                              std::uint64_t seed,
                              const Architecture& architecture,
                              bool with_oracle) {
  if (with_oracle && num_sites > kMaxEnumerationSites) {
    throw std::invalid_argument(
        "generate_state_pair: L=" + std::to_string(num_sites) +
        " exceeds the oracle ceiling " + std::to_string(kMaxEnumerationSites));
  }
  const RandomStream stream(seed);
  const AnsatzParameters theta =
      init_random(kind, num_sites, stream.split(0).key(), architecture);
  RandomStream direction_rng = stream.split(1);
  const std::vector<double> direction =
      random_unit_direction(theta.values.size(), direction_rng);

  StatePair pair;
  pair.seed = seed;
  pair.perturbation = t;
  pair.psi = make_ansatz(theta);
  pair.phi = make_ansatz(perturb(theta, direction, t));
  if (with_oracle) pair.oracle = exact_summary(*pair.psi, *pair.phi);
  return pair;
}

StatePair generate_pair_with_fidelity(AnsatzKind kind, int num_sites,
                                      double target, std::uint64_t seed,
                                      const Architecture& architecture,
                                      double tolerance) {
  if (!(target > 0.0 && target < 1.0)) {
    throw std::invalid_argument("target fidelity must lie in (0, 1)");
  }
  if (num_sites > kMaxEnumerationSites) {
    throw std::invalid_argument("generate_pair_with_fidelity: L exceeds the "
                                "oracle ceiling");
  }
  const RandomStream stream(seed);
  const AnsatzParameters theta =
      init_random(kind, num_sites, stream.split(0).key(), architecture);
  RandomStream direction_rng = stream.split(1);
  const std::vector<double> direction =
      random_unit_direction(theta.values.size(), direction_rng);
  const auto log_psi = enumerate_log_amplitudes(*make_ansatz(theta));

  auto fidelity_at = [&](double t) {
    const auto phi = make_ansatz(perturb(theta, direction, t));
    return std::norm(
        overlap_from_log_amplitudes(log_psi, enumerate_log_amplitudes(*phi)));
  };

  double lo = 0.0;
  double hi = 0.25;
  double f_hi = fidelity_at(hi);
  for (int k = 0; f_hi > target; ++k) {
    if (k == 40) {
      throw std::runtime_error(
          "generate_pair_with_fidelity: could not bracket target fidelity " +
          std::to_string(target));
    }
    lo = hi;
    hi *= 2.0;
    f_hi = fidelity_at(hi);
  }
  double best_t = hi;
  double best_gap = std::abs(f_hi - target);
  for (int k = 0; k < 80 && best_gap > tolerance; ++k) {
    const double mid = 0.5 * (lo + hi);
    const double f = fidelity_at(mid);
    if (std::abs(f - target) < best_gap) {
      best_gap = std::abs(f - target);
      best_t = mid;
    }
    (f > target ? lo : hi) = mid;
  }

  StatePair pair;
  pair.seed = seed;
  pair.perturbation = best_t;
  pair.psi = make_ansatz(theta);
  pair.phi = make_ansatz(perturb(theta, direction, best_t));
  pair.oracle = exact_summary(*pair.psi, *pair.phi);
  return pair;
}

bool exceeds_bound(double error, double bound) {
  return bound > 0.0 ? error >= bound : error > 0.0;
}

std::complex<double> variance_quantity(const EstimateRow& row,
                                       EstimatorMode mode) {
  return mode == EstimatorMode::normalized ? row.y1 : row.y1 * row.y2;
}

double analytic_variance(const EstimateRow& row, EstimatorMode mode) {
  return mode == EstimatorMode::normalized
             ? variance_overlap_normalized(row.oracle_fidelity, row.n1)
             : variance_fidelity(row.oracle_fidelity, row.n1, row.n2);
}

int fidelity_bin(double f, int bin_count) {
  const int b = static_cast<int>(std::floor(f * bin_count));
  return std::clamp(b, 0, bin_count - 1);
}

EstimateRow run_single_estimate(const StatePair& pair, EstimatorMode mode,
                                std::uint64_t samples,
                                const ChainSettings& chain,
                                RandomStream& rng) {
  if (!pair.oracle) {
    throw std::invalid_argument("run_single_estimate: pair has no oracle");
  }
  EstimateReport report;
  double acceptance = 1.0;
  if (mode == EstimatorMode::normalized) {
    const SampleBatch batch = sample_auto(*pair.phi, samples, chain, rng);
    report = estimate_normalized(*pair.psi, *pair.phi, batch);
    acceptance = batch.acceptance_rate;
  } else {
    const SampleSplit split = split_samples(samples);
    const SampleBatch from_phi = sample_auto(*pair.phi, split.n1, chain, rng);
    const SampleBatch from_psi = sample_auto(*pair.psi, split.n2, chain, rng);
    report = estimate_general(*pair.psi, *pair.phi, from_phi, from_psi);
    const std::uint64_t steps = from_phi.total_steps + from_psi.total_steps;
    if (steps > 0) {
      acceptance = static_cast<double>(from_phi.accepted_steps +
                                       from_psi.accepted_steps) /
                   static_cast<double>(steps);
    }
  }
  EstimateRow row;
  row.num_sites = pair.psi->num_sites();
  row.samples = samples;
  row.n1 = report.n1;
  row.n2 = report.n2;
  row.oracle_fidelity = pair.oracle->fidelity;
  row.oracle_overlap = pair.oracle->overlap;
  row.y1 = report.y1;
  row.y2 = report.y2.value_or(0.0);
  row.fidelity_estimate = report.fidelity;
  row.overlap_estimate = report.overlap;
  row.imag_residual = report.imag_residual;
  row.fidelity_error = std::abs(report.fidelity - pair.oracle->fidelity);
  row.overlap_error = std::abs(report.overlap - pair.oracle->overlap);
  row.acceptance_rate = acceptance;
  row.ratio_overflows = report.ratio_overflows;
  return row;
}

namespace {

PairInfo describe_pair(const StatePair& pair, int index, double target) {
  PairInfo info;
  info.index = index;
  info.seed = pair.seed;
  info.num_sites = pair.psi->num_sites();
  info.target_fidelity = target;
  info.perturbation = pair.perturbation;
  info.oracle = *pair.oracle;
  return info;
}

// Builds the pairs of `spec` at length `num_sites`, drawing pair seeds from
// `root`.
std::vector<StatePair> build_pairs(const ExperimentSpec& spec, int num_sites,
                                   const RandomStream& root,
                                   std::vector<PairInfo>& infos) {
  const int count = spec.pair_count();
  std::vector<StatePair> pairs(count);
  std::vector<double> targets(count, 1.0);
  parallel_for(count, spec.workers, [&](std::size_t k) {
    const std::uint64_t seed = root.split(k).key();
    const int targeted =
        static_cast<int>(spec.fidelity_targets.size()) * spec.pairs_per_target;
    if (static_cast<int>(k) < targeted) {
      targets[k] = spec.fidelity_targets[k / spec.pairs_per_target];
      pairs[k] = generate_pair_with_fidelity(
          spec.kind, num_sites, targets[k], seed, spec.architecture,
          spec.fidelity_tolerance);
    } else {
      pairs[k] = generate_state_pair(spec.kind, num_sites, 0.0, seed,
                                     spec.architecture, true);
    }
  });
  for (int k = 0; k < count; ++k) {
    infos.push_back(describe_pair(pairs[k], static_cast<int>(infos.size()),
                                  targets[k]));
  }
  return pairs;
}

struct MeanAndError {
  double mean = 0.0;
  double spread = 0.0;          // sample standard deviation
  double standard_error = 0.0;  // spread / sqrt(count)
};

MeanAndError mean_and_error(const std::vector<double>& xs) {
  MeanAndError out;
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.spread = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    out.standard_error = out.spread / std::sqrt(static_cast<double>(xs.size()));
  }
  return out;
}

struct VarianceEstimate {
  double variance = 0.0;
  double variance_real = 0.0;
  double standard_error = 0.0;
  double standard_error_real = 0.0;
};

// Unbiased sample variance E|X - mean|^2 of complex values, with a
// standard error from the spread of the squared deviations.
VarianceEstimate sample_variance(const std::vector<std::complex<double>>& xs) {
  VarianceEstimate out;
  const std::size_t r = xs.size();
  if (r < 2) return out;
  std::complex<double> mean = 0.0;
  for (const auto& x : xs) mean += x;
  mean /= static_cast<double>(r);
  std::vector<double> d(r);
  std::vector<double> d_real(r);
  for (std::size_t k = 0; k < r; ++k) {
    d[k] = std::norm(xs[k] - mean);
    d_real[k] = (xs[k].real() - mean.real()) * (xs[k].real() - mean.real());
  }
  const double scale = static_cast<double>(r) / static_cast<double>(r - 1);
  const MeanAndError dev = mean_and_error(d);
  const MeanAndError dev_real = mean_and_error(d_real);
  out.variance = dev.mean * scale;
  out.variance_real = dev_real.mean * scale;
  out.standard_error = dev.standard_error * scale;
  out.standard_error_real = dev_real.standard_error * scale;
  return out;
}

double angular_distance(double a, double b) {
  return std::abs(wrap_phase(a - b));
}

bool outside_overlap_region(const EstimateRow& row, double delta) {
  const std::uint64_t n = row.n1 + row.n2;
  const double f = std::clamp(row.oracle_fidelity, 0.0, 1.0);
  const double eps = epsilon_prime(f, n, delta);
  const Interval magnitude = overlap_magnitude_interval(f, eps);
  const double m = std::abs(row.overlap_estimate);
  if (m < magnitude.lo || m > magnitude.hi) return true;
  const double cone = phase_halfwidth(f, n, delta);
  if (cone >= std::numbers::pi || row.oracle_overlap == 0.0) return false;
  return angular_distance(std::arg(row.overlap_estimate),
                          std::arg(row.oracle_overlap)) > cone;
}

}  // namespace

EstimateTable collect_estimates(const ExperimentSpec& spec) {
  spec.validate();
  EstimateTable table;
  table.spec = spec;
  table.mode = spec.resolved_mode();
  const RandomStream root(spec.seed);
  const std::vector<StatePair> pairs =
      build_pairs(spec, spec.num_sites, root, table.pairs);

  const std::size_t reps = static_cast<std::size_t>(spec.repetitions);
  table.estimates.resize(pairs.size() * reps);
  ChainSettings chain = spec.chain;
  chain.workers = 1;
  parallel_for(table.estimates.size(), spec.workers, [&](std::size_t idx) {
    const std::size_t k = idx / reps;
    const std::size_t r = idx % reps;
    RandomStream rng = root.split(k).split(1 + r);
    const std::uint64_t key = rng.key();
    EstimateRow row =
        run_single_estimate(pairs[k], table.mode, spec.samples, chain, rng);
    row.pair = static_cast<int>(k);
    row.repetition = static_cast<int>(r);
    row.seed = key;
    table.estimates[idx] = row;
  });
  return table;
}

BinnedResult summarize_bins(const EstimateTable& data) {
  const ExperimentSpec& spec = data.spec;
  const EstimatorMode mode = data.mode;
  const bool normalized = mode == EstimatorMode::normalized;

  std::map<int, std::vector<const EstimateRow*>> by_bin;
  for (const EstimateRow& row : data.estimates) {
    by_bin[fidelity_bin(row.oracle_fidelity, spec.bin_count)].push_back(&row);
  }

  BinnedResult result;
  result.data = data;
  for (const auto& [bin, rows] : by_bin) {
    BinRow out;
    out.bin = bin;
    out.fidelity_lo = bin * spec.bin_width();
    out.fidelity_hi = (bin + 1) * spec.bin_width();
    out.fidelity_center = (bin + 0.5) * spec.bin_width();
    out.count = rows.size();

    std::vector<double> fid_err;
    std::vector<double> ovl_err;
    std::vector<double> fid_bound;
    std::vector<double> ovl_bound;
    std::map<int, std::vector<std::complex<double>>> per_pair;
    std::map<int, double> per_pair_analytic;
    for (const EstimateRow* row : rows) {
      const double f = std::clamp(row->oracle_fidelity, 0.0, 1.0);
      fid_err.push_back(row->fidelity_error);
      ovl_err.push_back(row->overlap_error);
      per_pair[row->pair].push_back(variance_quantity(*row, mode));
      per_pair_analytic[row->pair] = analytic_variance(*row, mode);

      double primary_bound;
      double primary_error;
      bool secondary_failure;
      if (normalized) {
        const double eps = epsilon_normalized(f, row->n1, spec.delta);
        const double halfwidth = fidelity_halfwidth_normalized(f, eps);
        primary_bound = eps;
        primary_error = std::abs(row->y1 - row->oracle_overlap);
        secondary_failure = exceeds_bound(row->fidelity_error, halfwidth);
        fid_bound.push_back(halfwidth);
        ovl_bound.push_back(eps);
      } else {
        const double eps = epsilon_prime(f, row->n1 + row->n2, spec.delta);
        primary_bound = eps;
        primary_error = row->fidelity_error;
        secondary_failure = outside_overlap_region(*row, spec.delta);
        fid_bound.push_back(eps);
      }
      if (exceeds_bound(primary_error, primary_bound)) ++out.failures;
      if (secondary_failure) out.secondary_failure_rate += 1.0;
    }
    out.pairs = per_pair.size();
    const MeanAndError fe = mean_and_error(fid_err);
    const MeanAndError oe = mean_and_error(ovl_err);
    out.mean_fidelity_error = fe.mean;
    out.fidelity_error_spread = fe.spread;
    out.mean_overlap_error = oe.mean;
    out.overlap_error_spread = oe.spread;
    out.failure_rate =
        static_cast<double>(out.failures) / static_cast<double>(out.count);
    out.secondary_failure_rate /= static_cast<double>(out.count);
    out.mean_fidelity_bound = mean_and_error(fid_bound).mean;
    if (normalized) out.mean_overlap_bound = mean_and_error(ovl_bound).mean;

    double se2 = 0.0;
    double se2_real = 0.0;
    for (const auto& [pair, values] : per_pair) {
      const VarianceEstimate v = sample_variance(values);
      out.empirical_variance += v.variance;
      out.empirical_variance_real += v.variance_real;
      out.analytic_variance += per_pair_analytic[pair];
      se2 += v.standard_error * v.standard_error;
      se2_real += v.standard_error_real * v.standard_error_real;
    }
    const double p = static_cast<double>(out.pairs);
    out.empirical_variance /= p;
    out.empirical_variance_real /= p;
    out.analytic_variance /= p;
    out.variance_standard_error = std::sqrt(se2) / p;
    out.variance_real_standard_error = std::sqrt(se2_real) / p;

    const std::uint64_t n = spec.samples;
    const std::uint64_t n1 = normalized ? n : split_samples(n).n1;
    out.epsilon_center = epsilon_normalized(out.fidelity_center, n1,
                                            spec.delta);
    out.fidelity_halfwidth_center =
        fidelity_halfwidth_normalized(out.fidelity_center, out.epsilon_center);
    out.epsilon_prime_center =
        epsilon_prime(out.fidelity_center, n, spec.delta);
    result.bins.push_back(out);
  }
  return result;
}

BinnedResult run_variance_experiment(const ExperimentSpec& spec) {
  return summarize_bins(collect_estimates(spec));
}

BinnedResult run_bound_experiment(const ExperimentSpec& spec) {
  return summarize_bins(collect_estimates(spec));
}

PowerLawFit fit_power_law(const std::vector<double>& x,
                          const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_power_law needs >= 2 paired points");
  }
  const std::size_t m = x.size();
  std::vector<double> lx(m);
  std::vector<double> ly(m);
  for (std::size_t k = 0; k < m; ++k) {
    if (!(x[k] > 0.0 && y[k] > 0.0)) {
      throw std::invalid_argument("fit_power_law needs positive data");
    }
    lx[k] = std::log(x[k]);
    ly[k] = std::log(y[k]);
  }
  const double mx = mean_and_error(lx).mean;
  const double my = mean_and_error(ly).mean;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_power_law: degenerate x");
  PowerLawFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (m > 2) {
    double ssr = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double r = ly[k] - fit.intercept - fit.slope * lx[k];
      ssr += r * r;
    }
    fit.slope_standard_error =
        std::sqrt(ssr / static_cast<double>(m - 2) / sxx);
  }
  return fit;
}

namespace {

ExperimentSpec window_spec(const ExperimentSpec& spec) {
  ExperimentSpec out = spec;
  out.fidelity_targets = {0.5 * (spec.window_lo + spec.window_hi)};
  out.include_identity_pair = false;
  return out;
}

bool in_window(const ExperimentSpec& spec, double f) {
  return f >= spec.window_lo && f <= spec.window_hi;
}

}  // namespace

ScalingTable run_scaling_experiment(const ExperimentSpec& spec_in,
                                    const std::vector<std::uint64_t>& n_grid) {
  const ExperimentSpec spec = window_spec(spec_in);
  spec.validate();
  if (n_grid.empty()) throw std::invalid_argument("empty sample-size grid");
  for (std::size_t g = 0; g < n_grid.size(); ++g) {
    if (n_grid[g] < 2 || (g > 0 && n_grid[g] <= n_grid[g - 1])) {
      throw std::invalid_argument(
          "sample-size grid must be ascending with entries >= 2");
    }
  }

  ScalingTable table;
  table.spec = spec_in;
  table.mode = spec.resolved_mode();
  const RandomStream root(spec.seed);
  const std::vector<StatePair> pairs =
      build_pairs(spec, spec.num_sites, root, table.pairs);

  const std::size_t reps = static_cast<std::size_t>(spec.repetitions);
  const std::size_t per_n = pairs.size() * reps;
  table.estimates.resize(n_grid.size() * per_n);
  ChainSettings chain = spec.chain;
  chain.workers = 1;
  parallel_for(table.estimates.size(), spec.workers, [&](std::size_t idx) {
    const std::size_t g = idx / per_n;
    const std::size_t k = (idx % per_n) / reps;
    const std::size_t r = idx % reps;
    RandomStream rng = root.split(k).split(1 + g).split(r);
    const std::uint64_t key = rng.key();
    EstimateRow row =
        run_single_estimate(pairs[k], table.mode, n_grid[g], chain, rng);
    row.pair = static_cast<int>(k);
    row.repetition = static_cast<int>(r);
    row.seed = key;
    table.estimates[idx] = row;
  });

  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t g = 0; g < n_grid.size(); ++g) {
    std::vector<double> errors;
    for (std::size_t i = g * per_n; i < (g + 1) * per_n; ++i) {
      const EstimateRow& row = table.estimates[i];
      if (in_window(spec, row.oracle_fidelity)) {
        errors.push_back(row.fidelity_error);
      }
    }
    const MeanAndError e = mean_and_error(errors);
    ScalingRow out;
    out.samples = n_grid[g];
    out.count = errors.size();
    out.mean_fidelity_error = e.mean;
    out.standard_error = e.standard_error;
    out.epsilon_prime_mid = epsilon_prime(0.5, n_grid[g], spec.delta);
    table.rows.push_back(out);
    if (out.count > 0 && e.mean > 0.0) {
      xs.push_back(static_cast<double>(n_grid[g]));
      ys.push_back(e.mean);
    }
  }
  if (xs.size() >= 2) table.fit = fit_power_law(xs, ys);
  return table;
}

SizeTable run_size_experiment(const ExperimentSpec& spec_in,
                              const std::vector<int>& l_grid) {
  if (l_grid.empty()) throw std::invalid_argument("empty length grid");
  ExperimentSpec spec = window_spec(spec_in);
  for (int l : l_grid) {
    spec.num_sites = l;
    spec.validate();
  }

  SizeTable table;
  table.spec = spec_in;
  table.mode = spec.resolved_mode();
  const RandomStream root(spec.seed);

  std::vector<std::vector<StatePair>> pairs_by_length;
  for (int l : l_grid) {
    pairs_by_length.push_back(build_pairs(
        spec, l, root.split(static_cast<std::uint64_t>(l)), table.pairs));
  }

  const std::size_t reps = static_cast<std::size_t>(spec.repetitions);
  const std::size_t per_length = static_cast<std::size_t>(spec.pair_count()) * reps;
  table.estimates.resize(l_grid.size() * per_length);
  ChainSettings chain = spec.chain;
  chain.workers = 1;
  parallel_for(table.estimates.size(), spec.workers, [&](std::size_t idx) {
    const std::size_t g = idx / per_length;
    const std::size_t k = (idx % per_length) / reps;
    const std::size_t r = idx % reps;
    RandomStream rng = root.split(static_cast<std::uint64_t>(l_grid[g]))
                           .split(k)
                           .split(1 + r);
    const std::uint64_t key = rng.key();
    EstimateRow row = run_single_estimate(pairs_by_length[g][k], table.mode,
                                          spec.samples, chain, rng);
    row.pair = static_cast<int>(g * spec.pair_count() + k);
    row.repetition = static_cast<int>(r);
    row.seed = key;
    table.estimates[idx] = row;
  });

  for (std::size_t g = 0; g < l_grid.size(); ++g) {
    std::vector<double> errors;
    std::vector<double> fidelities;
    for (std::size_t i = g * per_length; i < (g + 1) * per_length; ++i) {
      const EstimateRow& row = table.estimates[i];
      if (in_window(spec, row.oracle_fidelity)) {
        errors.push_back(row.fidelity_error);
        fidelities.push_back(row.oracle_fidelity);
      }
    }
    const MeanAndError e = mean_and_error(errors);
    SizeRow out;
    out.num_sites = l_grid[g];
    out.count = errors.size();
    out.mean_fidelity_error = e.mean;
    out.standard_error = e.standard_error;
    out.mean_oracle_fidelity = mean_and_error(fidelities).mean;
    out.epsilon_prime_mid = epsilon_prime(0.5, spec.samples, spec.delta);
    table.rows.push_back(out);
  }
  for (std::size_t a = 0; a < table.rows.size(); ++a) {
    for (std::size_t b = a + 1; b < table.rows.size(); ++b) {
      const SizeRow& ra = table.rows[a];
      const SizeRow& rb = table.rows[b];
      const double se = std::hypot(ra.standard_error, rb.standard_error);
      const double diff =
          std::abs(ra.mean_fidelity_error - rb.mean_fidelity_error);
      const double z = se > 0.0 ? diff / se
                       : diff > 0.0 ? std::numeric_limits<double>::infinity()
                                    : 0.0;
      table.max_pairwise_z = std::max(table.max_pairwise_z, z);
    }
  }
  return table;
}

}  // namespace nqsfid
