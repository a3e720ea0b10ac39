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

#include "cdp/counter.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "cdp/errors.hpp"
#include "cdp/noise.hpp"

namespace cdp {

namespace {
int ceil_log2(std::int64_t n) {
  if (n <= 1) return 0;
  return std::bit_width(static_cast<std::uint64_t>(n - 1));
}
}  // namespace

PrivateCounter::PrivateCounter(std::int64_t horizon, double epsilon,
                               RandomSource src)
    : horizon_(horizon),
      epsilon_(epsilon),
      levels_(ceil_log2(horizon) + 1),
      scale_(0.0),
      noise_master_(src.next_u64()),
      tree_(static_cast<std::size_t>(std::max<std::int64_t>(horizon, 0) + 1),
            0) {
  if (horizon < 1) throw ParameterError("PrivateCounter: horizon must be >= 1");
  if (!(epsilon > 0.0)) {
    throw ParameterError("PrivateCounter: epsilon must be > 0");
  }
  scale_ = static_cast<double>(levels_) / epsilon_;
}

double PrivateCounter::node_noise(std::int64_t node) {
  auto it = noise_.find(node);
  if (it != noise_.end()) return it->second;
  RandomSource node_src =
      RandomSource::derived(noise_master_, static_cast<std::uint64_t>(node));
  const double draw = sample_laplace(node_src, LaplaceScale(scale_));
  max_noise_over_scale_ =
      std::max(max_noise_over_scale_, std::fabs(draw) / scale_);
  noise_.emplace(node, draw);
  return draw;
}

std::int64_t PrivateCounter::feed(int bit) {
  if (round_ >= horizon_) {
    throw StateError("PrivateCounter: feed past horizon");
  }
  if (bit != 0 && bit != 1) {
    throw ParameterError("PrivateCounter: input bit must be 0 or 1");
  }
  ++round_;
  true_count_ += bit;
  if (bit != 0) {
    for (std::int64_t j = round_; j <= horizon_; j += j & (-j)) {
      tree_[static_cast<std::size_t>(j)] += 1;
    }
  }
  double noisy = 0.0;
  for (std::int64_t j = round_; j > 0; j -= j & (-j)) {
    noisy += static_cast<double>(tree_[static_cast<std::size_t>(j)]);
    noisy += node_noise(j);
  }
  std::int64_t estimate = std::llround(noisy);
  estimate = std::clamp<std::int64_t>(estimate, 0, round_);
  max_abs_error_ = std::max<std::int64_t>(
      max_abs_error_, std::llabs(estimate - true_count_));
  return estimate;
}

}  // namespace cdp
