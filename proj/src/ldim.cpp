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

#include "cdp/ldim.hpp"

#include <algorithm>

#include "cdp/errors.hpp"

namespace cdp {

LdimCache::LdimCache(std::shared_ptr<const HypothesisClass> cls)
    : cls_(std::move(cls)) {
  if (!cls_) throw ParameterError("LdimCache: null class");
}

int LdimCache::ldim(const RowSet& rows) {
  if (rows.empty()) throw ParameterError("ldim: empty hypothesis set");
  return compute(rows);
}

int LdimCache::ldim_full() { return compute(all_rows(*cls_)); }

int LdimCache::compute(const RowSet& rows) {
  if (rows.size() <= 1) return 0;
  auto it = memo_.find(rows);
  if (it != memo_.end()) return it->second;

  const std::int32_t n = cls_->domain_size();
  int best = 0;
  RowSet zeros, ones;
  zeros.reserve(rows.size());
  ones.reserve(rows.size());
  for (std::int32_t x = 0; x < n; ++x) {
    zeros.clear();
    ones.clear();
    for (std::uint32_t r : rows) {
      (cls_->label(static_cast<std::int32_t>(r), x) ? ones : zeros)
          .push_back(r);
    }
    if (zeros.empty() || ones.empty()) continue;
    const int candidate = 1 + std::min(compute(zeros), compute(ones));
    best = std::max(best, candidate);
  }
  memo_.emplace(rows, best);
  return best;
}

int ldim(const HypothesisClass& cls) {
  LdimCache cache(std::make_shared<HypothesisClass>(cls));
  return cache.ldim_full();
}

RowSet all_rows(const HypothesisClass& cls) {
  RowSet rows(static_cast<std::size_t>(cls.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i] = static_cast<std::uint32_t>(i);
  }
  return rows;
}

}  // namespace cdp
