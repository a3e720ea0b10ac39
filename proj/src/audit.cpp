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

#include "cdp/audit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>

#include "cdp/errors.hpp"
#include "cdp/parallel.hpp"
#include "cdp/stats.hpp"

namespace cdp {

std::int64_t audit_min_trials(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw ParameterError("audit: confidence must be in (0, 1)");
  }
  const double needed = 20.0 / (1.0 - confidence);
  return std::max<std::int64_t>(1000,
                                static_cast<std::int64_t>(std::ceil(needed)));
}

AuditReport audit_epsilon(const std::string& game_id, const GameRunner& runner,
                          const AuditParams& params, double target) {
  if (params.prefix_len < 1 || params.prefix_len > 8) {
    throw ParameterError("audit: prefix_len must be in [1, 8]");
  }
  if (params.delta < 0.0 || params.delta >= 1.0) {
    throw ParameterError("audit: delta must be in [0, 1)");
  }
  const std::int64_t min_trials = audit_min_trials(params.confidence);
  if (params.trials < min_trials) {
    throw ParameterError(
        "audit: " + std::to_string(params.trials) +
        " trials too few for confidence " + std::to_string(params.confidence) +
        "; need at least " + std::to_string(min_trials));
  }

  using Counts = std::map<std::vector<int>, std::array<std::int64_t, 2>>;
  Counts counts;
  std::mutex merge_mutex;
  const std::int64_t n = params.trials;
  parallel_chunks(n, params.workers, [&](std::int64_t begin, std::int64_t end) {
    Counts local;
    std::vector<int> key;
    for (std::int64_t t = begin; t < end; ++t) {
      for (int b = 0; b < 2; ++b) {
        const std::uint64_t seed =
            RandomSource::derived(params.master_seed,
                                  static_cast<std::uint64_t>(2 * t + b))
                .next_u64();
        const GameTranscript transcript = runner(b, seed);
        key.assign(
            transcript.released.begin(),
            transcript.released.begin() +
                std::min<std::size_t>(transcript.released.size(),
                                      static_cast<std::size_t>(
                                          params.prefix_len)));
        ++local[key][static_cast<std::size_t>(b)];
      }
    }
    const std::lock_guard<std::mutex> lock(merge_mutex);
    for (auto& [k, v] : local) {
      auto& slot = counts[k];
      slot[0] += v[0];
      slot[1] += v[1];
    }
  });

  AuditReport report;
  report.game_id = game_id;
  report.trials = n;
  report.prefix_len = params.prefix_len;
  report.delta = params.delta;
  report.confidence = params.confidence;
  report.target = target;

  const double nd = static_cast<double>(n);
  // Bonferroni over every event and both directions.
  const double alpha_each =
      (1.0 - params.confidence) /
      (2.0 * static_cast<double>(std::max<std::size_t>(counts.size(), 1)));

  double point = 0.0, lower = 0.0;
  for (const auto& [outcome, pair] : counts) {
    report.events.push_back(
        AuditEvent{outcome, pair[0], pair[1]});
    for (int dir = 0; dir < 2; ++dir) {
      const std::int64_t num = dir == 0 ? pair[0] : pair[1];
      const std::int64_t den = dir == 0 ? pair[1] : pair[0];
      // Plug-in estimate with a half-count floor on the denominator.
      const double p_num = static_cast<double>(num) / nd - params.delta;
      const double p_den = std::max(static_cast<double>(den), 0.5) / nd;
      if (p_num > 0.0) {
        point = std::max(point, std::log(p_num / p_den));
      }
      // Conservative bound.
      const double lo = binom_ci_lower(num, n, alpha_each) - params.delta;
      const double hi = binom_ci_upper(den, n, alpha_each);
      if (lo > 0.0 && hi > 0.0) {
        lower = std::max(lower, std::log(lo / hi));
      }
    }
  }
  report.point_estimate = point;
  report.lower_bound = std::max(0.0, lower);
  report.pass = report.lower_bound <= target;
  return report;
}

AuditReport group_privacy_check(const std::string& game_id,
                                const GameRunner& runner, int g,
                                double epsilon, double delta,
                                AuditParams params, double target_multiplier,
                                double slack) {
  if (g < 0) throw ParameterError("group check: g must be >= 0");
  if (!(epsilon > 0.0)) throw ParameterError("group check: epsilon > 0");
  const double gd = static_cast<double>(g);
  params.delta = std::min(0.999, gd * std::exp(epsilon * gd) * delta);
  const double target = target_multiplier * gd * epsilon + slack;
  return audit_epsilon(game_id + "-g" + std::to_string(g), runner, params,
                       target);
}

}  // namespace cdp
