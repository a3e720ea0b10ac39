//
// Copyright 2026 The CDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "cdp/hypothesis.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "cdp/errors.hpp"

namespace cdp {

HypothesisClass::HypothesisClass(
    std::int32_t domain_size, std::vector<std::vector<std::uint8_t>> table,
    std::vector<std::string> names)
    : domain_size_(domain_size),
      table_(std::move(table)),
      names_(std::move(names)) {
  if (domain_size_ < 1) {
    throw ParameterError("HypothesisClass: domain size must be >= 1");
  }
  if (table_.empty()) {
    throw ParameterError("HypothesisClass: at least one hypothesis required");
  }
  if (!names_.empty() && names_.size() != table_.size()) {
    throw ParameterError("HypothesisClass: names/table size mismatch");
  }
  std::set<std::vector<std::uint8_t>> seen;
  for (const auto& row : table_) {
    if (row.size() != static_cast<std::size_t>(domain_size_)) {
      throw ParameterError("HypothesisClass: row length != domain size");
    }
    for (std::uint8_t v : row) {
      if (v > 1) throw ParameterError("HypothesisClass: labels must be 0/1");
    }
    if (!seen.insert(row).second) {
      throw ParameterError("HypothesisClass: duplicate hypothesis row");
    }
  }
}

const std::string& HypothesisClass::name(std::int32_t row) const {
  static const std::string kEmpty;
  if (names_.empty()) return kEmpty;
  return names_[static_cast<std::size_t>(row)];
}

HypothesisClass HypothesisClass::full(std::int32_t n) {
  if (n < 1 || n > 20) {
    throw ParameterError("HypothesisClass::full: n must be in [1, 20]");
  }
  std::vector<std::vector<std::uint8_t>> table;
  table.reserve(std::size_t{1} << n);
  for (std::uint32_t r = 0; r < (std::uint32_t{1} << n); ++r) {
    std::vector<std::uint8_t> row(static_cast<std::size_t>(n));
    for (std::int32_t x = 0; x < n; ++x) {
      row[static_cast<std::size_t>(x)] =
          static_cast<std::uint8_t>((r >> x) & 1u);
    }
    table.push_back(std::move(row));
  }
  return HypothesisClass(n, std::move(table));
}

HypothesisClass HypothesisClass::thresholds(std::int32_t n) {
  if (n < 1) throw ParameterError("HypothesisClass::thresholds: n must be >= 1");
  std::vector<std::vector<std::uint8_t>> table;
  table.reserve(static_cast<std::size_t>(n) + 1);
  for (std::int32_t i = 0; i <= n; ++i) {
    std::vector<std::uint8_t> row(static_cast<std::size_t>(n));
    for (std::int32_t x = 0; x < n; ++x) {
      row[static_cast<std::size_t>(x)] = x >= i ? 1 : 0;
    }
    table.push_back(std::move(row));
  }
  return HypothesisClass(n, std::move(table));
}

HypothesisClass HypothesisClass::point_functions(std::int32_t n) {
  if (n < 1) {
    throw ParameterError("HypothesisClass::point_functions: n must be >= 1");
  }
  std::vector<std::vector<std::uint8_t>> table;
  table.reserve(static_cast<std::size_t>(n) + 1);
  for (std::int32_t i = 0; i < n; ++i) {
    std::vector<std::uint8_t> row(static_cast<std::size_t>(n), 0);
    row[static_cast<std::size_t>(i)] = 1;
    table.push_back(std::move(row));
  }
  table.emplace_back(static_cast<std::size_t>(n), 0);  // all-zeros
  return HypothesisClass(n, std::move(table));
}

HypothesisClass HypothesisClass::load(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) {
    throw ParameterError("HypothesisClass::load: missing header");
  }
  std::int32_t n = 0, h = 0;
  if (std::sscanf(header.c_str(), "n=%d h=%d", &n, &h) != 2) {
    throw ParameterError("HypothesisClass::load: bad header '" + header + "'");
  }
  if (n < 1 || h < 1) {
    throw ParameterError("HypothesisClass::load: bad header values");
  }
  std::vector<std::vector<std::uint8_t>> table;
  table.reserve(static_cast<std::size_t>(h));
  std::string line;
  for (std::int32_t r = 0; r < h; ++r) {
    if (!std::getline(in, line)) {
      throw ParameterError("HypothesisClass::load: truncated table");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.size() != static_cast<std::size_t>(n)) {
      throw ParameterError("HypothesisClass::load: row " + std::to_string(r) +
                           " has wrong length");
    }
    std::vector<std::uint8_t> row(static_cast<std::size_t>(n));
    for (std::int32_t x = 0; x < n; ++x) {
      const char c = line[static_cast<std::size_t>(x)];
      if (c != '0' && c != '1') {
        throw ParameterError("HypothesisClass::load: row characters must be 0/1");
      }
      row[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>(c - '0');
    }
    table.push_back(std::move(row));
  }
  return HypothesisClass(n, std::move(table));
}

HypothesisClass HypothesisClass::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("HypothesisClass: cannot open " + path);
  return load(in);
}

void HypothesisClass::save(std::ostream& out) const {
  out << "n=" << domain_size_ << " h=" << size() << "\n";
  for (const auto& row : table_) {
    for (std::uint8_t v : row) out << static_cast<char>('0' + v);
    out << "\n";
  }
}

void HypothesisClass::save_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ParameterError("HypothesisClass: cannot write " + path);
  save(out);
}

}  // namespace cdp
