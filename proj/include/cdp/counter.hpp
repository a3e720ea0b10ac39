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

#ifndef CDP_COUNTER_HPP
#define CDP_COUNTER_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "cdp/random_source.hpp"

namespace cdp {

// epsilon-DP bit counter under continual observation (dyadic-tree
// mechanism over a fixed horizon T).
//
// Every input bit contributes to at most ceil(log2 T) + 1 dyadic nodes, so
// per-node noise Lap((ceil(log2 T) + 1) / epsilon) makes the whole stream
// epsilon-DP by basic composition. Node noise is drawn lazily on first
// touch, keyed by node index, so identical seeds give identical trees
// regardless of query order.
class PrivateCounter {
 public:
  PrivateCounter(std::int64_t horizon, double epsilon, RandomSource src);

  PrivateCounter(PrivateCounter&&) noexcept = default;
  PrivateCounter& operator=(PrivateCounter&&) noexcept = default;

  // Consumes one input bit and returns the noisy prefix sum at the current
  // round, rounded to the nearest integer and clamped to [0, rounds].
  std::int64_t feed(int bit);

  std::int64_t horizon() const { return horizon_; }
  std::int64_t rounds_consumed() const { return round_; }
  int levels() const { return levels_; }
  double node_noise_scale() const { return scale_; }

  // Instrumentation for utility tests. true_count is the exact prefix sum;
  // max_abs_error tracks max_i |estimate_i - true_i| over the rounds so
  // far; max_noise_over_scale is max |draw| / scale among touched nodes
  // (used to flag the all-noise-small "good event").
  std::int64_t true_count() const { return true_count_; }
  std::int64_t max_abs_error() const { return max_abs_error_; }
  double max_noise_over_scale() const { return max_noise_over_scale_; }

 private:
  double node_noise(std::int64_t node);

  std::int64_t horizon_;
  double epsilon_;
  int levels_;
  double scale_;
  std::uint64_t noise_master_;
  std::int64_t round_ = 0;
  std::int64_t true_count_ = 0;
  std::int64_t max_abs_error_ = 0;
  double max_noise_over_scale_ = 0.0;
  std::vector<std::int64_t> tree_;  // Fenwick-layout exact dyadic sums
  std::unordered_map<std::int64_t, double> noise_;
};

}  // namespace cdp

#endif  // CDP_COUNTER_HPP
