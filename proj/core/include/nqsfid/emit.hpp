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

#ifndef NQSFID_EMIT_HPP
#define NQSFID_EMIT_HPP

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nqsfid/experiment.hpp"

namespace nqsfid {

enum class OutputFormat { csv, json };

std::string_view to_string(OutputFormat format);
OutputFormat parse_output_format(std::string_view name);

// Failure to read or write a file; what() starts with the path.
class IoError : public std::runtime_error {
 public:
  IoError(const std::filesystem::path& path, const std::string& what);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// JSON documents carry the full spec echo, the state pairs with their oracle
// values, every estimate with its seed, and the summary rows. Doubles are
// written in shortest round-trip form; non-finite values as "nan", "inf" or
// "-inf".
std::string to_json(const ExperimentSpec& spec);
std::string to_json(const BinnedResult& result);
std::string to_json(const ScalingTable& table);
std::string to_json(const SizeTable& table);
std::string to_json(const PairInfo& pair);
std::string to_json(const EstimateRow& row);

// Inverses of to_json. Throw std::invalid_argument on malformed input.
ExperimentSpec experiment_spec_from_json(std::string_view text);
BinnedResult binned_result_from_json(std::string_view text);
ScalingTable scaling_table_from_json(std::string_view text);
SizeTable size_table_from_json(std::string_view text);

// One header line naming the row fields, then one line per row. Complex
// columns are split into <name>_re and <name>_im.
std::string to_csv(const std::vector<BinRow>& bins);
std::string to_csv(const std::vector<ScalingRow>& rows);
std::string to_csv(const std::vector<SizeRow>& rows);
std::string to_csv(const std::vector<EstimateRow>& rows);

// Writes the summary rows (csv) or the full document (json) to `path`.
void emit(const BinnedResult& result, const std::filesystem::path& path,
          OutputFormat format);
void emit(const ScalingTable& table, const std::filesystem::path& path,
          OutputFormat format);
void emit(const SizeTable& table, const std::filesystem::path& path,
          OutputFormat format);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     std::string_view content);

}  // namespace nqsfid

#endif  // NQSFID_EMIT_HPP
