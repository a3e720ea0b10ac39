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

// Independent oracles used by the test suites. These deliberately avoid the
// library's memoized/optimized code paths.

#ifndef CDP_TESTS_TEST_SUPPORT_HPP
#define CDP_TESTS_TEST_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "cdp/hypothesis.hpp"
#include "cdp/learners.hpp"

namespace cdp_test {

// Plain unmemoized Littlestone-dimension recursion. Exponential; only for
// small classes.
inline int brute_ldim(const cdp::HypothesisClass& cls,
                      const std::vector<std::uint32_t>& rows) {
  if (rows.size() <= 1) return 0;
  int best = 0;
  for (std::int32_t x = 0; x < cls.domain_size(); ++x) {
    std::vector<std::uint32_t> zeros, ones;
    for (std::uint32_t r : rows) {
      (cls.label(static_cast<std::int32_t>(r), x) ? ones : zeros).push_back(r);
    }
    if (zeros.empty() || ones.empty()) continue;
    best = std::max(best,
                    1 + std::min(brute_ldim(cls, zeros), brute_ldim(cls, ones)));
  }
  return best;
}

inline int brute_ldim(const cdp::HypothesisClass& cls) {
  std::vector<std::uint32_t> rows(static_cast<std::size_t>(cls.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i] = static_cast<std::uint32_t>(i);
  }
  return brute_ldim(cls, rows);
}

// Exhaustive adversary: the largest number of mistakes any x-sequence of
// the given depth can force out of a fresh learner, with labels fixed to
// row h_index. Branching is |domain|^depth; keep depth small.
inline std::int64_t exhaustive_max_mistakes(
    std::shared_ptr<const cdp::HypothesisClass> cls, std::int32_t h_index,
    const std::function<std::unique_ptr<cdp::OnlineLearner>()>& make_learner,
    int depth) {
  std::function<std::int64_t(cdp::OnlineLearner&, int)> go =
      [&](cdp::OnlineLearner& learner, int remaining) -> std::int64_t {
    if (remaining == 0) return 0;
    std::int64_t best = 0;
    for (std::int32_t x = 0; x < cls->domain_size(); ++x) {
      auto copy = learner.snapshot();
      const std::int32_t y = cls->label(h_index, x);
      const std::int64_t hit = copy->predict(x) != y ? 1 : 0;
      copy->update(x, y);
      best = std::max(best, hit + go(*copy, remaining - 1));
    }
    return best;
  };
  auto learner = make_learner();
  return go(*learner, depth);
}

// Mistakes of a fresh learner replayed over a fixed stream.
inline std::int64_t replay_mistakes(cdp::OnlineLearner& learner,
                                    const std::vector<cdp::LabeledExample>& s) {
  std::int64_t mistakes = 0;
  for (const auto& e : s) {
    mistakes += learner.predict(e.x) != e.y ? 1 : 0;
    learner.update(e.x, e.y);
  }
  return mistakes;
}

}  // namespace cdp_test

#endif  // CDP_TESTS_TEST_SUPPORT_HPP
