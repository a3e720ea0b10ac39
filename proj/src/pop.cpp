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

#include "cdp/pop.hpp"

#include <algorithm>
#include <cmath>

#include "cdp/errors.hpp"

namespace cdp {

namespace {

std::int32_t next_odd_at_least(double value) {
  const double clamped = std::max(1.0, value);
  auto k = static_cast<std::int64_t>(std::ceil(clamped - 1e-9));
  if (k % 2 == 0) ++k;
  if (k > INT32_MAX) throw ParameterError("pop: k overflows 32 bits");
  return static_cast<std::int32_t>(k);
}

ChallengeAtParams cat_params_for(const PopConfig& config) {
  ChallengeAtParams p;
  p.epsilon = config.budget.epsilon;
  p.delta = config.budget.delta;
  p.threshold = config.threshold();
  p.target_reports = config.r;
  p.horizon = config.budget.horizon;
  p.beta = config.budget.beta;
  p.sensitivity = 1.0;
  p.c_gamma = config.constants.c_gamma;
  p.c_lambda = config.constants.c_lambda;
  return p;
}

}  // namespace

void PopConfig::validate() const {
  if (k < 1) throw ParameterError("pop: k must be >= 1");
  if (k % 2 == 0) throw ParameterError("pop: k must be odd");
  if (r < 1) throw ParameterError("pop: r must be >= 1");
  budget.validate();
}

PopConfig pop_default_params(std::int32_t d, const PrivacyBudget& budget,
                             const PopConstants& constants) {
  if (d < 1) throw ParameterError("pop_default_params: d must be >= 1");
  budget.validate();
  const double eps = budget.epsilon;
  const double t = static_cast<double>(budget.horizon);
  const double log_inv_delta = std::log(1.0 / budget.delta);
  const double log_t_beta = std::log(t / budget.beta);
  const double k_primary = constants.c_k * (d / (eps * eps)) *
                           log_inv_delta * log_inv_delta * log_t_beta *
                           log_t_beta;
  const double k_secondary =
      (1.0 / (eps * d)) * std::log(t) * std::log(t / budget.delta);
  PopConfig config;
  config.k = next_odd_at_least(std::max(k_primary, k_secondary));
  config.r = static_cast<std::int64_t>(
      std::ceil(constants.c_r *
                (static_cast<double>(d) * config.k +
                 std::log(1.0 / budget.beta))));
  config.budget = budget;
  config.constants = constants;
  config.validate();
  return config;
}

Pop::Pop(const PopConfig& config,
         std::vector<std::unique_ptr<OnlineLearner>> experts, RandomSource src)
    : Pop(config, std::move(experts), src.next_u64(), 0) {}

// Private delegate so all sub-streams derive from one master draw.
Pop::Pop(const PopConfig& config,
         std::vector<std::unique_ptr<OnlineLearner>> experts,
         std::uint64_t master, int)
    : config_(config),
      experts_(std::move(experts)),
      ell_src_(RandomSource::derived(master, 1)),
      coin_src_(RandomSource::derived(master, 2)),
      cat_(cat_params_for(config), RandomSource::derived(master, 3)) {
  config_.validate();
  if (experts_.size() != static_cast<std::size_t>(config_.k)) {
    throw ParameterError("pop: expected exactly k expert states");
  }
  for (const auto& e : experts_) {
    if (!e) throw ParameterError("pop: null expert");
  }
}

std::optional<int> Pop::round(std::int32_t x) {
  if (halted_) throw StateError("pop: round after halt");
  if (pending_) throw ProtocolError("pop: feed_label the previous round first");
  if (round_ >= config_.budget.horizon) {
    throw StateError("pop: round past horizon");
  }
  ++round_;
  const auto ell = static_cast<std::int32_t>(
      ell_src_.uniform_int(static_cast<std::uint64_t>(config_.k)));

  std::int32_t votes = 0;
  if (config_.use_snapshots) {
    for (std::int32_t j = 0; j < config_.k; ++j) {
      if (j == ell) {
        votes += experts_[j]->predict(x);
      } else {
        votes += experts_[j]->snapshot()->predict(x);
      }
    }
  } else {
    for (std::int32_t j = 0; j < config_.k; ++j) {
      votes += experts_[j]->predict(x);
    }
  }
  last_vote_sum_ = votes;

  const double f =
      -std::fabs(static_cast<double>(config_.k) / 2.0 - votes);
  const int sigma = cat_.step(f);
  if (cat_.halted()) {
    halted_ = true;
    halt_cause_ = HaltCause::kCatHalted;
    log_.push_back(
        PopRoundRecord{round_, x, -1, -1, sigma, ell, votes, false});
    return std::nullopt;
  }

  const int prediction =
      sigma == 1 ? coin_src_.fair_bit() : (2 * votes > config_.k ? 1 : 0);
  pending_ = true;
  pending_x_ = x;
  pending_pred_ = prediction;
  pending_sigma_ = sigma;
  pending_ell_ = ell;
  pending_votes_ = votes;
  return prediction;
}

void Pop::feed_label(std::int32_t y) {
  if (!pending_) throw ProtocolError("pop: no round awaiting a label");
  experts_[pending_ell_]->update(pending_x_, y);
  const bool mistake = pending_pred_ != y;
  mistakes_ += mistake ? 1 : 0;
  log_.push_back(PopRoundRecord{round_, pending_x_, pending_pred_, y,
                                pending_sigma_, pending_ell_, pending_votes_,
                                mistake});
  pending_ = false;
}

void MistakeCapParams::validate() const {
  if (u < 1) throw ParameterError("pop: mistake cap u must be >= 1");
  if (u >= w) throw ParameterError("pop: mistake cap needs u < w");
  if (v_override && (*v_override < u || *v_override > w)) {
    throw ParameterError("pop: v must lie in [u, w]");
  }
}

PopUw::PopUw(const PopConfig& config, const MistakeCapParams& cap,
             std::vector<std::unique_ptr<OnlineLearner>> experts,
             RandomSource src)
    : PopUw(config, cap, std::move(experts), src.next_u64(), 0) {}

PopUw::PopUw(const PopConfig& config, const MistakeCapParams& cap,
             std::vector<std::unique_ptr<OnlineLearner>> experts,
             std::uint64_t master, int)
    : pop_(config, std::move(experts), RandomSource::derived(master, 1)),
      cap_(cap),
      cap_counter_(config.budget.horizon, config.budget.epsilon,
                   RandomSource::derived(master, 2)),
      v_(0) {
  cap_.validate();
  if (cap_.v_override) {
    v_ = *cap_.v_override;
  } else if (cap_.draw_v_uniform) {
    RandomSource v_src = RandomSource::derived(master, 3);
    v_ = cap_.u + static_cast<std::int64_t>(v_src.uniform_int(
                      static_cast<std::uint64_t>(cap_.w - cap_.u + 1)));
  } else {
    v_ = cap_.u;
  }
}

std::optional<int> PopUw::round(std::int32_t x) {
  if (halted_) throw StateError("pop[u,w]: round after halt");
  auto prediction = pop_.round(x);
  if (!prediction) {
    halted_ = true;
    halt_cause_ = HaltCause::kCatHalted;
    return std::nullopt;
  }
  pending_pred_ = *prediction;
  return prediction;
}

void PopUw::feed_label(std::int32_t y) {
  if (halted_) throw StateError("pop[u,w]: feed_label after halt");
  pop_.feed_label(y);
  const int miss = pending_pred_ != y ? 1 : 0;
  last_cap_count_ = cap_counter_.feed(miss);
  if (last_cap_count_ >= v_) {
    halted_ = true;
    halt_cause_ = HaltCause::kMistakeCap;
  }
}

AgnosticRunResult agnostic_pop_run(std::shared_ptr<const HypothesisClass> cls,
                                   const std::vector<LabeledExample>& stream,
                                   const PrivacyBudget& budget,
                                   const AgnosticConstants& constants,
                                   std::uint64_t master_seed) {
  if (!cls) throw ParameterError("agnostic_pop_run: null class");
  budget.validate();
  auto cache = std::make_shared<LdimCache>(cls);
  const int d = cache->ldim_full();
  const double t = static_cast<double>(budget.horizon);
  const double log_t = std::log(std::max(t, 2.0));

  const std::int32_t k = next_odd_at_least(
      constants.c_k * static_cast<double>(d) * d / budget.epsilon);
  const auto u = static_cast<std::int64_t>(std::max(
      1.0, std::ceil(constants.c_u * static_cast<double>(k) * d * log_t)));
  const std::int64_t w = 2 * u;
  const double m_star = constants.m_star_mult * d * log_t;

  AgnosticRunResult result;
  result.predictions.reserve(stream.size());
  std::size_t pos = 0;
  std::uint64_t phase_index = 0;
  while (pos < stream.size()) {
    const std::uint64_t phase_seed =
        RandomSource::derived(master_seed, phase_index).next_u64();
    PopConfig config;
    config.k = k;
    config.r = u;
    config.budget = budget;
    config.constants.c_gamma = constants.c_gamma;
    config.constants.c_lambda = constants.c_lambda;

    std::vector<std::unique_ptr<OnlineLearner>> experts;
    experts.reserve(static_cast<std::size_t>(k));
    for (std::int32_t j = 0; j < k; ++j) {
      experts.push_back(
          std::make_unique<AgnosticExpertLearner>(cls, cache, m_star,
                                                  budget.horizon));
    }
    MistakeCapParams cap;
    cap.u = u;
    cap.w = w;
    PopUw machine(config, cap, std::move(experts), RandomSource(phase_seed));

    PhaseSummary phase;
    phase.first_round = static_cast<std::int64_t>(pos);
    phase.k = k;
    phase.u = u;
    phase.w = w;
    phase.v = machine.v();
    phase.seed = phase_seed;

    while (pos < stream.size() && !machine.halted()) {
      const auto prediction = machine.round(stream[pos].x);
      if (!prediction) break;  // retired without answering; replay this round
      result.predictions.push_back(static_cast<std::int32_t>(*prediction));
      phase.mistakes += *prediction != stream[pos].y ? 1 : 0;
      machine.feed_label(stream[pos].y);
      ++pos;
      ++phase.rounds;
    }
    phase.cause = machine.halted() ? machine.halt_cause() : HaltCause::kNone;

    if (phase.rounds == 0 && machine.halted()) {
      // Degenerate configuration (r so small the mechanism retires on its
      // first query). Answer the round with a coin so the run still makes
      // progress, then restart.
      RandomSource coin = RandomSource::derived(phase_seed, 1000003);
      const auto fallback = static_cast<std::int32_t>(coin.fair_bit());
      result.predictions.push_back(fallback);
      phase.mistakes += fallback != stream[pos].y ? 1 : 0;
      ++pos;
      ++phase.rounds;
    }
    result.total_mistakes += phase.mistakes;
    result.phases.push_back(phase);
    ++phase_index;
  }
  if (result.phases.empty()) {
    // Empty stream: record the single (empty) phase.
    PhaseSummary phase;
    phase.k = k;
    phase.u = u;
    phase.w = w;
    phase.v = u;
    result.phases.push_back(phase);
  }
  return result;
}

}  // namespace cdp
