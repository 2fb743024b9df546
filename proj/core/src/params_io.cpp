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

#include <bit>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nqsfid/ansatz.hpp"

namespace nqsfid {

namespace {

constexpr const char* kMagic = "nqsfid-parameters";
constexpr int kFormatVersion = 1;

[[noreturn]] void io_error(const std::string& path, const std::string& what) {
  throw std::runtime_error(path + ": " + what);
}

}  // namespace

void save_parameters(const std::string& path, const AnsatzParameters& params) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) io_error(path, "cannot open for writing");
  out << kMagic << ' ' << kFormatVersion << '\n'
      << "kind " << to_string(params.kind) << '\n'
      << "sites " << params.num_sites << '\n'
      << "hidden " << params.hidden << '\n'
      << "depth " << params.depth << '\n'
      << "seed " << params.seed << '\n'
      << "count " << params.values.size() << '\n'
      << "data\n";
  for (double v : params.values) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    char bytes[8];
    for (int b = 0; b < 8; ++b) {
      bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xffU);
    }
    out.write(bytes, 8);
  }
  if (!out) io_error(path, "write failed");
}

AnsatzParameters load_parameters(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_error(path, "cannot open for reading");

  std::string line;
  if (!std::getline(in, line)) io_error(path, "empty file");
  {
    std::istringstream magic(line);
    std::string word;
    int version = 0;
    magic >> word >> version;
    if (word != kMagic || version != kFormatVersion) {
      io_error(path, "not an nqsfid parameter file (version " +
                         std::to_string(kFormatVersion) + ")");
    }
  }

  AnsatzParameters params;
  std::size_t count = 0;
  bool have_kind = false;
  bool have_count = false;
  while (std::getline(in, line) && line != "data") {
    std::istringstream kv(line);
    std::string key;
    kv >> key;
    if (key == "kind") {
      std::string value;
      kv >> value;
      try {
        params.kind = parse_ansatz_kind(value);
      } catch (const std::invalid_argument& e) {
        io_error(path, e.what());
      }
      have_kind = true;
    } else if (key == "sites") {
      kv >> params.num_sites;
    } else if (key == "hidden") {
      kv >> params.hidden;
    } else if (key == "depth") {
      kv >> params.depth;
    } else if (key == "seed") {
      kv >> params.seed;
    } else if (key == "count") {
      kv >> count;
      have_count = true;
    } else {
      io_error(path, "unknown header key '" + key + "'");
    }
    if (kv.fail()) io_error(path, "malformed header line '" + line + "'");
  }
  if (line != "data" || !have_kind || !have_count) {
    io_error(path, "incomplete header");
  }

  params.values.resize(count);
  for (double& v : params.values) {
    unsigned char bytes[8];
    if (!in.read(reinterpret_cast<char*>(bytes), 8)) {
      io_error(path, "truncated parameter data");
    }
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) {
      bits |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
    }
    v = std::bit_cast<double>(bits);
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    io_error(path, "trailing bytes after parameter data");
  }
  return params;
}

}  // namespace nqsfid
