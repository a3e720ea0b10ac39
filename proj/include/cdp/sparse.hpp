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

#ifndef CDP_SPARSE_HPP
#define CDP_SPARSE_HPP

#include <cstdint>

#include "cdp/counter.hpp"
#include "cdp/random_source.hpp"

namespace cdp {

// Both mechanisms answer an adaptive stream of pre-evaluated query values
// (the caller computes f_i and declares a per-stream sensitivity). step()
// returns sigma in {0,1}; the sigma of the halting round is returned before
// halted() flips, and any step() after a halt is a StateError.

struct AboveThresholdParams {
  double epsilon = 1.0;
  double delta = 1e-5;
  double threshold = 0.0;
  std::int64_t target_reports = 1;  // r: halt after this many sigma = 1
  double sensitivity = 1.0;
  double c_gamma = 1.0;  // constant hidden inside the noise-scale bound

  void validate() const;
  // c_gamma * (sensitivity/epsilon) * sqrt(r) * ln(r/delta)
  double gamma() const;
};

// Sparse-vector mechanism: noisy value vs. threshold, halting on the exact
// count of positive reports.
class AboveThreshold {
 public:
  AboveThreshold(const AboveThresholdParams& params, RandomSource src);

  int step(double query_value);

  bool halted() const { return halted_; }
  double gamma() const { return gamma_; }
  std::int64_t positives() const { return positives_; }
  std::int64_t rounds() const { return rounds_; }
  double max_noise_over_gamma() const { return max_noise_over_gamma_; }

 private:
  AboveThresholdParams params_;
  double gamma_;
  RandomSource src_;
  bool halted_ = false;
  std::int64_t positives_ = 0;
  std::int64_t rounds_ = 0;
  double max_noise_over_gamma_ = 0.0;
};

struct ChallengeAtParams {
  double epsilon = 1.0;
  double delta = 1e-5;
  double threshold = 0.0;
  std::int64_t target_reports = 1;  // r
  std::int64_t horizon = 1;         // T, needed to size the counter
  double beta = 0.05;
  double sensitivity = 1.0;
  double c_gamma = 1.0;
  double c_lambda = 1.0;

  void validate() const;
  // c_lambda * (1/epsilon) * ln(T) * ln(T/beta): the counter error bound.
  double lambda() const;
  // c_gamma * (sensitivity/epsilon) * sqrt(r + lambda) * ln((r + lambda)/delta)
  double gamma() const;
};

// AboveThreshold variant whose halting condition reads a private counter of
// the positive reports instead of the exact count, so the halting time
// itself leaks nothing beyond the counter's epsilon.
class ChallengeAT {
 public:
  ChallengeAT(const ChallengeAtParams& params, RandomSource src);

  int step(double query_value);

  bool halted() const { return halted_; }
  double gamma() const { return gamma_; }
  double lambda() const { return lambda_; }
  std::int64_t rounds() const { return rounds_; }
  std::int64_t exact_positives() const { return exact_positives_; }
  std::int64_t last_count() const { return last_count_; }
  double max_noise_over_gamma() const { return max_noise_over_gamma_; }
  const PrivateCounter& counter() const { return counter_; }

 private:
  ChallengeAT(const ChallengeAtParams& params, std::uint64_t master);

  ChallengeAtParams params_;
  double gamma_;
  double lambda_;
  RandomSource noise_src_;
  PrivateCounter counter_;
  bool halted_ = false;
  std::int64_t rounds_ = 0;
  std::int64_t exact_positives_ = 0;
  std::int64_t last_count_ = 0;
  double max_noise_over_gamma_ = 0.0;
};

}  // namespace cdp

#endif  // CDP_SPARSE_HPP
