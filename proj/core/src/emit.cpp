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

#include "nqsfid/emit.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <type_traits>

#include "json.hpp"

namespace nqsfid {

using nlohmann::json;

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::csv ? "csv" : "json";
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown output format '" + std::string(name) +
                              "' (expected csv or json)");
}

IoError::IoError(const std::filesystem::path& path, const std::string& what)
    : std::runtime_error(path.string() + ": " + what), path_(path) {}

namespace {

// Field lists shared by the JSON and CSV writers. `S` is the struct type,
// possibly const-qualified.

template <typename S, typename V>
  requires std::is_same_v<std::remove_const_t<S>, ChainSettings>
void visit_fields(S& s, V&& v) {
  v("steps_per_sweep", s.steps_per_sweep);
  v("burn_in_sweeps", s.burn_in_sweeps);
  v("sweeps_per_sample", s.sweeps_per_sample);
  v("chains", s.chains);
  v("workers", s.workers);
}

template <typename S, typename V>
  requires std::is_same_v<std::remove_const_t<S>, Architecture>
void visit_fields(S& s, V&& v) {
  v("hidden", s.hidden);
  v("depth", s.depth);
  v("weight_init", s.weight_init);
}

template <typename S, typename V>
  requires std::is_same_v<std::remove_const_t<S>, ExperimentSpec>
void visit_fields(S& s, V&& v) {
  v("kind", s.kind);
  v("num_sites", s.num_sites);
  v("samples", s.samples);
  v("repetitions", s.repetitions);
  v("fidelity_targets", s.fidelity_targets);
  v("pairs_per_target", s.pairs_per_target);
  v("include_identity_pair", s.include_identity_pair);
  v("delta", s.delta);
  v("seed", s.seed);
  v("bin_count", s.bin_count);
  v("mode", s.mode);
  v("chain", s.chain);
  v("architecture", s.architecture);
  v("fidelity_tolerance", s.fidelity_tolerance);
  v("window_lo", s.window_lo);
  v("window_hi", s.window_hi);
  v("workers", s.workers);
}

template <typename S, typename V>
  requires std::is_same_v<std::remove_const_t<S>, ExactSummary>
void visit_fields(S& s, V&& v) {
  v("log_norm_psi", s.log_norm_psi);
  v("log_norm_phi", s.log_norm_phi);
  v("norm_psi", s.norm_psi);
  v("norm_phi", s.norm_phi);
  v("overlap", s.overlap);
  v("fidelity", s.fidelity);
  v("var_z_exact", s.var_z_exact);
  v("var_w_exact", s.var_w_exact);
}

template <typename S, typename V>
  requires std::is_same_v<std::remove_const_t<S>, PairInfo>
void visit_fields(S& s, V&& v) {
  v("index", s.index);
  v("seed", s.seed);
  v("num_sites", s.num_sites);
  v("target_fidelity", s.target_fidelity);
  v("perturbation", s.perturbation);
  v("oracle", s.oracle);
}

template <typename S, typename V>
  requires std::is_same_v<std::remove_const_t<S>, EstimateRow>
void visit_fields(S& s, V&& v) {
  v("pair", s.pair);
  v("repetition", s.repetition);
  v("seed", s.seed);
  v("num_sites", s.num_sites);
  v("samples", s.samples);
  v("n1", s.n1);
  v("n2", s.n2);
  v("oracle_fidelity", s.oracle_fidelity);
  v("oracle_overlap", s.oracle_overlap);
  v("y1", s.y1);
  v("y2", s.y2);
  v("fidelity_estimate", s.fidelity_estimate);
  v("overlap_estimate", s.overlap_estimate);
  v("imag_residual", s.imag_residual);
  v("fidelity_error", s.fidelity_error);
  v("overlap_error", s.overlap_error);
  v("acceptance_rate", s.acceptance_rate);
  v("ratio_overflows", s.ratio_overflows);
}

template <typename S, typename V>
  requires std::is_same_v<std::remove_const_t<S>, BinRow>
void visit_fields(S& s, V&& v) {
  v("bin", s.bin);
  v("fidelity_lo", s.fidelity_lo);
  v("fidelity_hi", s.fidelity_hi);
  v("fidelity_center", s.fidelity_center);
  v("count", s.count);
  v("pairs", s.pairs);
  v("mean_fidelity_error", s.mean_fidelity_error);
  v("fidelity_error_spread", s.fidelity_error_spread);
  v("mean_overlap_error", s.mean_overlap_error);
  v("overlap_error_spread", s.overlap_error_spread);
  v("empirical_variance", s.empirical_variance);
  v("empirical_variance_real", s.empirical_variance_real);
  v("analytic_variance", s.analytic_variance);
  v("variance_standard_error", s.variance_standard_error);
  v("variance_real_standard_error", s.variance_real_standard_error);
  v("failure_rate", s.failure_rate);
  v("failures", s.failures);
  v("secondary_failure_rate", s.secondary_failure_rate);
  v("epsilon_prime_center", s.epsilon_prime_center);
  v("fidelity_halfwidth_center", s.fidelity_halfwidth_center);
  v("epsilon_center", s.epsilon_center);
  v("mean_fidelity_bound", s.mean_fidelity_bound);
  v("mean_overlap_bound", s.mean_overlap_bound);
}

template <typename S, typename V>
  requires std::is_same_v<std::remove_const_t<S>, PowerLawFit>
void visit_fields(S& s, V&& v) {
  v("slope", s.slope);
  v("intercept", s.intercept);
  v("slope_standard_error", s.slope_standard_error);
}

template <typename S, typename V>
  requires std::is_same_v<std::remove_const_t<S>, ScalingRow>
void visit_fields(S& s, V&& v) {
  v("samples", s.samples);
  v("count", s.count);
  v("mean_fidelity_error", s.mean_fidelity_error);
  v("standard_error", s.standard_error);
  v("epsilon_prime_mid", s.epsilon_prime_mid);
}

template <typename S, typename V>
  requires std::is_same_v<std::remove_const_t<S>, SizeRow>
void visit_fields(S& s, V&& v) {
  v("num_sites", s.num_sites);
  v("count", s.count);
  v("mean_fidelity_error", s.mean_fidelity_error);
  v("standard_error", s.standard_error);
  v("mean_oracle_fidelity", s.mean_oracle_fidelity);
  v("epsilon_prime_mid", s.epsilon_prime_mid);
}

template <typename T>
concept Visitable = requires(T& t) {
  visit_fields(t, [](const char*, auto&) {});
};

template <typename T>
struct is_optional : std::false_type {};
template <typename T>
struct is_optional<std::optional<T>> : std::true_type {};

template <typename T>
struct is_vector : std::false_type {};
template <typename T>
struct is_vector<std::vector<T>> : std::true_type {};

// ---- JSON ----

json encode_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double decode_double(const json& j) {
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw std::invalid_argument("expected a number, got \"" + s + "\"");
  }
  if (!j.is_number()) throw std::invalid_argument("expected a number");
  return j.get<double>();
}

template <typename T>
json encode(const T& value);
template <typename T>
void decode(const json& j, T& value);

template <typename T>
json encode(const T& value) {
  if constexpr (std::is_same_v<T, double>) {
    return encode_double(value);
  } else if constexpr (std::is_same_v<T, std::complex<double>>) {
    return json::array({encode_double(value.real()),
                        encode_double(value.imag())});
  } else if constexpr (std::is_same_v<T, bool> || std::is_integral_v<T>) {
    return value;
  } else if constexpr (std::is_enum_v<T>) {
    return std::string(to_string(value));
  } else if constexpr (is_optional<T>::value) {
    return value ? encode(*value) : json(nullptr);
  } else if constexpr (is_vector<T>::value) {
    json out = json::array();
    for (const auto& item : value) out.push_back(encode(item));
    return out;
  } else {
    json out = json::object();
    visit_fields(value, [&](const char* name, const auto& field) {
      out[name] = encode(field);
    });
    return out;
  }
}

template <typename T>
void decode(const json& j, T& value) {
  if constexpr (std::is_same_v<T, double>) {
    value = decode_double(j);
  } else if constexpr (std::is_same_v<T, std::complex<double>>) {
    if (!j.is_array() || j.size() != 2) {
      throw std::invalid_argument("expected a [re, im] pair");
    }
    value = {decode_double(j[0]), decode_double(j[1])};
  } else if constexpr (std::is_same_v<T, bool>) {
    if (!j.is_boolean()) throw std::invalid_argument("expected a boolean");
    value = j.get<bool>();
  } else if constexpr (std::is_integral_v<T>) {
    if (!j.is_number_integer()) {
      throw std::invalid_argument("expected an integer");
    }
    value = j.get<T>();
  } else if constexpr (std::is_same_v<T, AnsatzKind>) {
    value = parse_ansatz_kind(j.get<std::string>());
  } else if constexpr (std::is_same_v<T, WeightInit>) {
    value = parse_weight_init(j.get<std::string>());
  } else if constexpr (std::is_same_v<T, EstimatorMode>) {
    value = parse_estimator_mode(j.get<std::string>());
  } else if constexpr (is_optional<T>::value) {
    if (j.is_null()) {
      value.reset();
    } else {
      typename T::value_type inner{};
      decode(j, inner);
      value = inner;
    }
  } else if constexpr (is_vector<T>::value) {
    if (!j.is_array()) throw std::invalid_argument("expected an array");
    value.clear();
    for (const json& item : j) {
      typename T::value_type inner{};
      decode(item, inner);
      value.push_back(std::move(inner));
    }
  } else {
    if (!j.is_object()) throw std::invalid_argument("expected an object");
    visit_fields(value, [&](const char* name, auto& field) {
      const auto it = j.find(name);
      if (it == j.end()) {
        throw std::invalid_argument(std::string("missing field '") + name +
                                    "'");
      }
      try {
        decode(*it, field);
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string(name) + ": " + e.what());
      } catch (const json::exception& e) {
        throw std::invalid_argument(std::string(name) + ": " + e.what());
      }
    });
  }
}

json parse_document(std::string_view text, std::string_view expected_kind) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("document") ||
      doc["document"] != expected_kind) {
    throw std::invalid_argument("expected a '" + std::string(expected_kind) +
                                "' document");
  }
  return doc;
}

template <typename T>
T field(const json& doc, const char* name) {
  T out{};
  const auto it = doc.find(name);
  if (it == doc.end()) {
    throw std::invalid_argument(std::string("missing field '") + name + "'");
  }
  decode(*it, out);
  return out;
}

std::string dump(const json& doc) { return doc.dump(1) + "\n"; }

// ---- CSV ----

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, x);
  return std::string(buffer, result.ptr);
}

struct CsvCell {
  std::vector<std::string>& header;
  std::vector<std::string>& cells;

  template <typename T>
  void operator()(const char* name, const T& value) const {
    if constexpr (std::is_same_v<T, std::complex<double>>) {
      header.push_back(std::string(name) + "_re");
      header.push_back(std::string(name) + "_im");
      cells.push_back(format_double(value.real()));
      cells.push_back(format_double(value.imag()));
    } else if constexpr (std::is_same_v<T, std::optional<double>>) {
      header.push_back(name);
      cells.push_back(value ? format_double(*value) : std::string());
    } else if constexpr (std::is_same_v<T, double>) {
      header.push_back(name);
      cells.push_back(format_double(value));
    } else {
      header.push_back(name);
      cells.push_back(std::to_string(value));
    }
  }
};

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k > 0) out += ',';
    out += items[k];
  }
  return out + "\n";
}

template <typename Row>
std::string rows_to_csv(const std::vector<Row>& rows) {
  std::vector<std::string> header;
  std::vector<std::string> cells;
  const Row blank{};
  visit_fields(blank, CsvCell{header, cells});
  std::string out = join(header);
  for (const Row& row : rows) {
    std::vector<std::string> unused;
    cells.clear();
    visit_fields(row, CsvCell{unused, cells});
    out += join(cells);
  }
  return out;
}

template <typename Result>
void emit_document(const Result& result, const std::string& csv,
                   const std::filesystem::path& path, OutputFormat format) {
  write_text_file(path, format == OutputFormat::csv ? csv : to_json(result));
}

}  // namespace

std::string to_json(const ExperimentSpec& spec) {
  json doc = encode(spec);
  return dump(doc);
}

ExperimentSpec experiment_spec_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
  ExperimentSpec spec;
  decode(doc, spec);
  return spec;
}

std::string to_json(const PairInfo& pair) { return dump(encode(pair)); }

std::string to_json(const EstimateRow& row) { return dump(encode(row)); }

std::string to_json(const BinnedResult& result) {
  json doc;
  doc["document"] = "binned";
  doc["spec"] = encode(result.data.spec);
  doc["mode"] = encode(result.data.mode);
  doc["pairs"] = encode(result.data.pairs);
  doc["bins"] = encode(result.bins);
  doc["estimates"] = encode(result.data.estimates);
  return dump(doc);
}

BinnedResult binned_result_from_json(std::string_view text) {
  const json doc = parse_document(text, "binned");
  BinnedResult result;
  result.data.spec = field<ExperimentSpec>(doc, "spec");
  result.data.mode = field<EstimatorMode>(doc, "mode");
  result.data.pairs = field<std::vector<PairInfo>>(doc, "pairs");
  result.bins = field<std::vector<BinRow>>(doc, "bins");
  result.data.estimates = field<std::vector<EstimateRow>>(doc, "estimates");
  return result;
}

std::string to_json(const ScalingTable& table) {
  json doc;
  doc["document"] = "scaling";
  doc["spec"] = encode(table.spec);
  doc["mode"] = encode(table.mode);
  doc["pairs"] = encode(table.pairs);
  doc["rows"] = encode(table.rows);
  doc["fit"] = encode(table.fit);
  doc["estimates"] = encode(table.estimates);
  return dump(doc);
}

ScalingTable scaling_table_from_json(std::string_view text) {
  const json doc = parse_document(text, "scaling");
  ScalingTable table;
  table.spec = field<ExperimentSpec>(doc, "spec");
  table.mode = field<EstimatorMode>(doc, "mode");
  table.pairs = field<std::vector<PairInfo>>(doc, "pairs");
  table.rows = field<std::vector<ScalingRow>>(doc, "rows");
  table.fit = field<std::optional<PowerLawFit>>(doc, "fit");
  table.estimates = field<std::vector<EstimateRow>>(doc, "estimates");
  return table;
}

std::string to_json(const SizeTable& table) {
  json doc;
  doc["document"] = "size";
  doc["spec"] = encode(table.spec);
  doc["mode"] = encode(table.mode);
  doc["pairs"] = encode(table.pairs);
  doc["rows"] = encode(table.rows);
  doc["max_pairwise_z"] = encode(table.max_pairwise_z);
  doc["estimates"] = encode(table.estimates);
  return dump(doc);
}

SizeTable size_table_from_json(std::string_view text) {
  const json doc = parse_document(text, "size");
  SizeTable table;
  table.spec = field<ExperimentSpec>(doc, "spec");
  table.mode = field<EstimatorMode>(doc, "mode");
  table.pairs = field<std::vector<PairInfo>>(doc, "pairs");
  table.rows = field<std::vector<SizeRow>>(doc, "rows");
  table.max_pairwise_z = field<double>(doc, "max_pairwise_z");
  table.estimates = field<std::vector<EstimateRow>>(doc, "estimates");
  return table;
}

std::string to_csv(const std::vector<BinRow>& bins) { return rows_to_csv(bins); }
std::string to_csv(const std::vector<ScalingRow>& rows) {
  return rows_to_csv(rows);
}
std::string to_csv(const std::vector<SizeRow>& rows) {
  return rows_to_csv(rows);
}
std::string to_csv(const std::vector<EstimateRow>& rows) {
  return rows_to_csv(rows);
}

void emit(const BinnedResult& result, const std::filesystem::path& path,
          OutputFormat format) {
  emit_document(result, format == OutputFormat::csv ? to_csv(result.bins) : "",
                path, format);
}

void emit(const ScalingTable& table, const std::filesystem::path& path,
          OutputFormat format) {
  emit_document(table, format == OutputFormat::csv ? to_csv(table.rows) : "",
                path, format);
}

void emit(const SizeTable& table, const std::filesystem::path& path,
          OutputFormat format) {
  emit_document(table, format == OutputFormat::csv ? to_csv(table.rows) : "",
                path, format);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError(path, "read failed");
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path,
                     std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

}  // namespace nqsfid
