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

#ifndef CDP_LDIM_HPP
#define CDP_LDIM_HPP

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "cdp/hypothesis.hpp"

namespace cdp {

// A version space: sorted, distinct row indices into a hypothesis class.
using RowSet = std::vector<std::uint32_t>;

// Exact Littlestone dimension by the standard recursion, memoized on the
// surviving-row set. Not thread-safe: use one cache per trial/thread; the
// underlying class table is immutable and freely shared.
class LdimCache {
 public:
  explicit LdimCache(std::shared_ptr<const HypothesisClass> cls);

  // ldim(V) = 0 if |V| <= 1, else the max over points x whose two label
  // restrictions are both nonempty of 1 + min(ldim(V0), ldim(V1)); 0 when
  // no point splits V. rows must be sorted and nonempty.
  int ldim(const RowSet& rows);
  int ldim_full();

  const HypothesisClass& cls() const { return *cls_; }
  std::shared_ptr<const HypothesisClass> cls_ptr() const { return cls_; }
  std::size_t memo_size() const { return memo_.size(); }

 private:
  struct RowSetHash {
    std::size_t operator()(const RowSet& rows) const {
      std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
      for (std::uint32_t r : rows) {
        h ^= r;
        h *= 1099511628211ULL;
      }
      return static_cast<std::size_t>(h);
    }
  };

  int compute(const RowSet& rows);

  std::shared_ptr<const HypothesisClass> cls_;
  std::unordered_map<RowSet, int, RowSetHash> memo_;
};

// One-shot convenience: Littlestone dimension of a whole class.
int ldim(const HypothesisClass& cls);

// The full row set [0, |H|).
RowSet all_rows(const HypothesisClass& cls);

}  // namespace cdp

#endif  // CDP_LDIM_HPP
