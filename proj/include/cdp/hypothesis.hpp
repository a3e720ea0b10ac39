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

#ifndef CDP_HYPOTHESIS_HPP
#define CDP_HYPOTHESIS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cdp {

// One unit of the online stream: a domain point in [0, n) and a binary label.
struct LabeledExample {
  std::int32_t x = 0;
  std::int32_t y = 0;
  bool operator==(const LabeledExample&) const = default;
};

// Explicit truth table of binary hypotheses over a finite domain. Rows are
// distinct and immutable after construction; instances are cheap to share.
class HypothesisClass {
 public:
  HypothesisClass(std::int32_t domain_size,
                  std::vector<std::vector<std::uint8_t>> table,
                  std::vector<std::string> names = {});

  std::int32_t domain_size() const { return domain_size_; }
  std::int32_t size() const { return static_cast<std::int32_t>(table_.size()); }
  int label(std::int32_t row, std::int32_t x) const {
    return table_[static_cast<std::size_t>(row)][static_cast<std::size_t>(x)];
  }
  const std::string& name(std::int32_t row) const;
  bool has_names() const { return !names_.empty(); }

  // All 2^n labelings of n points (n <= 20). Row r labels x with bit x of r.
  static HypothesisClass full(std::int32_t n);
  // h_i(x) = 1 iff x >= i for i = 0..n, over n ordered points (n+1 rows,
  // including the all-ones and all-zeros hypotheses).
  static HypothesisClass thresholds(std::int32_t n);
  // h_i(x) = 1 iff x == i for i = 0..n-1, plus the all-zeros hypothesis.
  static HypothesisClass point_functions(std::int32_t n);

  // Text format: a header line "n=<int> h=<int>" followed by h lines of
  // n characters over {0,1}.
  static HypothesisClass load(std::istream& in);
  static HypothesisClass load_file(const std::string& path);
  void save(std::ostream& out) const;
  void save_file(const std::string& path) const;

 private:
  std::int32_t domain_size_;
  std::vector<std::vector<std::uint8_t>> table_;
  std::vector<std::string> names_;
};

}  // namespace cdp

#endif  // CDP_HYPOTHESIS_HPP
