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

#ifndef CDP_AUDIT_HPP
#define CDP_AUDIT_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "cdp/games.hpp"

namespace cdp {

// Runs one seeded game instance under the given secret bit and returns the
// adversary's view. Must be deterministic in (secret_bit, trial_seed).
using GameRunner =
    std::function<GameTranscript(int secret_bit, std::uint64_t trial_seed)>;

struct AuditParams {
  std::int64_t trials = 100000;  // per bit value
  int prefix_len = 4;            // K: released answers kept per transcript
  double delta = 0.0;            // subtracted from the numerator probability
  double confidence = 0.95;
  int workers = 1;
  std::uint64_t master_seed = 1;
};

struct AuditEvent {
  std::vector<int> outcome;  // released-answer prefix
  std::int64_t count0 = 0;
  std::int64_t count1 = 0;
};

struct AuditReport {
  std::string game_id;
  std::int64_t trials = 0;
  int prefix_len = 0;
  double delta = 0.0;
  double confidence = 0.0;
  // Plug-in estimate max over events/directions of ln((p^ - delta)/p^').
  double point_estimate = 0.0;
  // Clopper-Pearson-conservative one-sided lower bound on the realized
  // privacy loss, Bonferroni-corrected over events and directions, floored
  // at 0. A pass means no violation was detected, never a privacy proof.
  double lower_bound = 0.0;
  double target = std::numeric_limits<double>::infinity();
  bool pass = true;  // lower_bound <= target
  std::vector<AuditEvent> events;
};

// Minimum trial count accepted at a given confidence; audit_epsilon refuses
// (ParameterError naming this value) below it.
std::int64_t audit_min_trials(double confidence);

// Monte Carlo distinguishing audit: maps transcripts to the discrete event
// family "first prefix_len released answers", counts events under both bit
// values, and reports the conservative lower bound described above.
AuditReport audit_epsilon(const std::string& game_id, const GameRunner& runner,
                          const AuditParams& params,
                          double target = std::numeric_limits<double>::infinity());

// Audit of the g-challenge game against the group-privacy target
// g * target_multiplier * epsilon + slack, with the delta term inflated to
// g * e^(eps g) * delta.
AuditReport group_privacy_check(const std::string& game_id,
                                const GameRunner& runner, int g,
                                double epsilon, double delta,
                                AuditParams params, double target_multiplier,
                                double slack);

}  // namespace cdp

#endif  // CDP_AUDIT_HPP
