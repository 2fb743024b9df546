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

// nqsfid: Monte Carlo fidelity experiments on neural quantum states.
//
//   nqsfid variance --ansatz arnn --length 12 --samples 16384 --reps 100
//   nqsfid bounds --config run.cfg --out bins.csv
//   nqsfid scaling --n-grid 256,1024,4096 --format json
//   nqsfid plan --fidelity 0.5 --samples 65536 --delta 0.32
//   nqsfid exact --ansatz rbm --length 10 --fidelity 0.7

#include <cstdint>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nqsfid/bounds.hpp"
#include "nqsfid/emit.hpp"
#include "nqsfid/experiment.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

struct Options {
  std::string ansatz = "rbm";
  std::optional<std::string> mode;
  std::string format = "csv";
  std::string out;
  std::string init = "symmetric";
  nqsfid::ExperimentSpec spec;
  std::vector<std::uint64_t> n_grid = {256,  512,   1024,  2048, 4096,
                                       8192, 16384, 32768, 65536};
  std::vector<int> l_grid = {8, 10, 12, 14};
  std::optional<double> epsilon;
  std::optional<double> fidelity;
  std::optional<double> perturbation;
};

void add_options(CLI::App& app, Options& o) {
  nqsfid::ExperimentSpec& s = o.spec;
  app.set_config("--config", "", "key=value file mirroring the flags");
  app.add_option("--ansatz", o.ansatz, "rbm or arnn")
      ->check(CLI::IsMember({"rbm", "arnn"}))
      ->capture_default_str();
  app.add_option("--length", s.num_sites, "Number of spins L")
      ->capture_default_str();
  app.add_option("--samples", s.samples, "Total samples n per estimate")
      ->capture_default_str();
  app.add_option("--reps", s.repetitions, "Repetitions per state pair")
      ->capture_default_str();
  app.add_option("--delta", s.delta, "Failure probability")
      ->capture_default_str();
  app.add_option("--seed", s.seed, "Master seed")->capture_default_str();
  app.add_option("--out", o.out, "Output file (default: stdout)");
  app.add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--mode", o.mode,
                 "normalized or general (default: by ansatz)")
      ->check(CLI::IsMember({"normalized", "general"}));
  app.add_option("--targets", s.fidelity_targets, "Target fidelities")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--pairs-per-target", s.pairs_per_target)
      ->capture_default_str();
  app.add_flag("--identity-pair", s.include_identity_pair,
               "Add a pair with F = 1");
  app.add_option("--bins", s.bin_count, "Number of fidelity bins")
      ->capture_default_str();
  app.add_option("--tolerance", s.fidelity_tolerance,
                 "Accepted |F - target| for pair calibration")
      ->capture_default_str();
  app.add_option("--window-lo", s.window_lo)->capture_default_str();
  app.add_option("--window-hi", s.window_hi)->capture_default_str();
  app.add_option("--workers", s.workers, "Worker threads (0: all cores)")
      ->capture_default_str();
  app.add_option("--burn-in", s.chain.burn_in_sweeps)->capture_default_str();
  app.add_option("--sweeps-per-sample", s.chain.sweeps_per_sample)
      ->capture_default_str();
  app.add_option("--steps-per-sweep", s.chain.steps_per_sweep,
                 "0 means L")
      ->capture_default_str();
  app.add_option("--chains", s.chain.chains)->capture_default_str();
  app.add_option("--hidden", s.architecture.hidden,
                 "Hidden width (0: default for the ansatz)")
      ->capture_default_str();
  app.add_option("--depth", s.architecture.depth, "ARNN layers")
      ->capture_default_str();
  app.add_option("--init", o.init, "nonnegative or symmetric")
      ->check(CLI::IsMember({"nonnegative", "symmetric"}))
      ->capture_default_str();
  app.add_option("--n-grid", o.n_grid, "Sample sizes for scaling")
      ->delimiter(',');
  app.add_option("--l-grid", o.l_grid, "Lengths for size")->delimiter(',');
  app.add_option("--epsilon", o.epsilon, "plan: target overlap radius");
  app.add_option("--fidelity", o.fidelity,
                 "plan: fidelity for the bounds; exact: target fidelity");
  app.add_option("--perturbation", o.perturbation,
                 "exact: perturbation size t instead of a target fidelity");
}

void finish_spec(Options& o) {
  o.spec.kind = nqsfid::parse_ansatz_kind(o.ansatz);
  o.spec.architecture.weight_init = nqsfid::parse_weight_init(o.init);
  if (o.mode) o.spec.mode = nqsfid::parse_estimator_mode(*o.mode);
}

void write_output(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    nqsfid::write_text_file(o.out, text);
  }
}

template <typename Result>
void emit_result(const Options& o, const Result& result) {
  const nqsfid::OutputFormat format = nqsfid::parse_output_format(o.format);
  if (o.out.empty()) {
    if (format == nqsfid::OutputFormat::json) {
      std::cout << nqsfid::to_json(result);
    } else if constexpr (std::is_same_v<Result, nqsfid::BinnedResult>) {
      std::cout << nqsfid::to_csv(result.bins);
    } else {
      std::cout << nqsfid::to_csv(result.rows);
    }
  } else {
    nqsfid::emit(result, o.out, format);
  }
}

std::string render(const nlohmann::ordered_json& row,
                   const std::string& format) {
  if (format == "json") return row.dump(1) + "\n";
  std::string header;
  std::string values;
  for (const auto& [key, value] : row.items()) {
    if (!header.empty()) {
      header += ',';
      values += ',';
    }
    header += key;
    values += value.is_string() ? value.get<std::string>() : value.dump();
  }
  return header + "\n" + values + "\n";
}

void run_plan(const Options& o) {
  const nqsfid::ExperimentSpec& s = o.spec;
  nlohmann::ordered_json row;
  if (o.epsilon) {
    row["epsilon_target"] = *o.epsilon;
    row["delta"] = s.delta;
    row["required_samples"] =
        nqsfid::required_samples_normalized(*o.epsilon, s.delta);
  }
  if (o.fidelity || !o.epsilon) {
    const double f = o.fidelity.value_or(0.5);
    const auto in = nqsfid::BoundInputs::balanced(f, s.samples, s.delta);
    const nqsfid::BoundReport b = nqsfid::evaluate_bounds(in);
    row["fidelity"] = f;
    row["samples"] = in.n;
    row["n1"] = in.n1;
    row["n2"] = in.n2;
    row["delta"] = s.delta;
    row["epsilon"] = b.epsilon;
    row["fidelity_halfwidth"] = b.fidelity_halfwidth;
    row["epsilon_prime"] = b.epsilon_prime;
    row["epsilon_prime_taylor"] =
        nqsfid::epsilon_prime_taylor(f, in.n, s.delta);
    row["delta_alpha"] = b.delta_alpha;
    row["overlap_magnitude_lo"] = b.overlap_magnitude.lo;
    row["overlap_magnitude_hi"] = b.overlap_magnitude.hi;
    row["median_epsilon"] = b.median_epsilon;
    row["chebyshev_tighter"] = b.chebyshev_tighter;
    row["variance_fidelity"] =
        nqsfid::variance_fidelity(f, in.n1, in.n2);
  }
  write_output(o, render(row, o.format));
}

void run_exact(const Options& o) {
  const nqsfid::ExperimentSpec& s = o.spec;
  s.validate();
  nqsfid::StatePair pair;
  double target = 1.0;
  if (o.perturbation) {
    pair = nqsfid::generate_state_pair(s.kind, s.num_sites, *o.perturbation,
                                       s.seed, s.architecture, true);
  } else {
    target = o.fidelity.value_or(0.5);
    pair = nqsfid::generate_pair_with_fidelity(s.kind, s.num_sites, target,
                                               s.seed, s.architecture,
                                               s.fidelity_tolerance);
  }
  nqsfid::RandomStream rng = nqsfid::RandomStream(s.seed).split(1);
  nqsfid::ChainSettings chain = s.chain;
  chain.workers = s.workers;
  nqsfid::EstimateRow row = nqsfid::run_single_estimate(
      pair, s.resolved_mode(), s.samples, chain, rng);
  row.seed = s.seed;

  const auto parsed_row = nlohmann::ordered_json::parse(nqsfid::to_json(row));
  if (o.format == "json") {
    nlohmann::ordered_json doc;
    doc["mode"] = std::string(nqsfid::to_string(s.resolved_mode()));
    doc["target_fidelity"] = target;
    doc["perturbation"] = pair.perturbation;
    doc["oracle"] = nlohmann::ordered_json::parse(
        nqsfid::to_json(nqsfid::PairInfo{0, s.seed, s.num_sites, target,
                                         pair.perturbation, *pair.oracle}))
                        ["oracle"];
    doc["estimate"] = parsed_row;
    write_output(o, doc.dump(1) + "\n");
  } else {
    write_output(o, nqsfid::to_csv(std::vector<nqsfid::EstimateRow>{row}));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo overlap and fidelity estimation for neural "
               "quantum states, checked against exact enumeration"};
  app.require_subcommand(1);
  Options o;
  add_options(app, o);
  app.fallthrough();
  auto* variance = app.add_subcommand(
      "variance", "Per-bin empirical variance against the analytic value");
  auto* bounds = app.add_subcommand(
      "bounds", "Per-bin coverage failures and mean errors against bounds");
  auto* scaling = app.add_subcommand(
      "scaling", "Mean fidelity error against n near F = 0.5");
  auto* size =
      app.add_subcommand("size", "Mean fidelity error against L near F = 0.5");
  auto* plan = app.add_subcommand("plan", "Evaluate bounds and sample plans");
  auto* exact = app.add_subcommand(
      "exact", "One estimate on one state pair next to its oracle values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::FileError& e) {
    std::cerr << "nqsfid: " << e.what() << "\n";
    return kExitIo;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    finish_spec(o);
    if (*variance) {
      emit_result(o, nqsfid::run_variance_experiment(o.spec));
    } else if (*bounds) {
      emit_result(o, nqsfid::run_bound_experiment(o.spec));
    } else if (*scaling) {
      emit_result(o, nqsfid::run_scaling_experiment(o.spec, o.n_grid));
    } else if (*size) {
      emit_result(o, nqsfid::run_size_experiment(o.spec, o.l_grid));
    } else if (*plan) {
      run_plan(o);
    } else if (*exact) {
      run_exact(o);
    }
  } catch (const nqsfid::IoError& e) {
    std::cerr << "nqsfid: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "nqsfid: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
