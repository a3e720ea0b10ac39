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

#ifndef CDP_POP_HPP
#define CDP_POP_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "cdp/budget.hpp"
#include "cdp/counter.hpp"
#include "cdp/hypothesis.hpp"
#include "cdp/learners.hpp"
#include "cdp/mechanism.hpp"
#include "cdp/random_source.hpp"
#include "cdp/sparse.hpp"

namespace cdp {

// Constants hidden inside the asymptotic parameter choices. Defaults are 1;
// every run records the values it used.
struct PopConstants {
  double c_gamma = 1.0;
  double c_lambda = 1.0;
  double c_k = 1.0;
  double c_r = 1.0;
};

struct PopConfig {
  std::int32_t k = 1;   // expert copies; forced odd so majority is total
  std::int64_t r = 1;   // positive reports before the mechanism retires
  PrivacyBudget budget;
  PopConstants constants;
  // Predictions are gathered by querying experts without updating them
  // (predict is contractually pure). Learners whose predict advances an
  // internal sampling stream can opt into literal state duplication.
  bool use_snapshots = false;

  double threshold() const { return -static_cast<double>(k) / 4.0; }
  void validate() const;
};

// k = next odd integer >= max(c_k (d/eps^2) ln^2(1/delta) ln^2(T/beta),
//                             (1/(eps d)) ln(T) ln(T/delta));
// r = ceil(c_r (d k + ln(1/beta))).
PopConfig pop_default_params(std::int32_t d, const PrivacyBudget& budget,
                             const PopConstants& constants = {});

enum class HaltCause { kNone, kCatHalted, kMistakeCap };

struct PopRoundRecord {
  std::int64_t i = 0;       // 1-based round
  std::int32_t x = 0;
  std::int32_t y_hat = -1;  // -1 on the halting round (no prediction emitted)
  std::int32_t y = -1;      // -1 until the label is fed
  std::int32_t sigma = 0;
  std::int32_t ell = 0;
  std::int32_t votes = 0;   // sum of expert votes this round
  bool mistake = false;
};

// Private online predictor: k expert copies of a non-private learner; per
// round all copies are queried, the disagreement score
// f = -|k/2 - sum_j yhat_j| goes to ChallengeAT with sensitivity 1, and a
// positive report turns the answer into a fair coin instead of the majority
// vote. Only one uniformly chosen copy absorbs each round's example; the
// rest are left untouched (the rewind).
class Pop : public OnlineMechanism {
 public:
  Pop(const PopConfig& config,
      std::vector<std::unique_ptr<OnlineLearner>> experts, RandomSource src);

  // nullopt means ChallengeAT retired during this round: no prediction is
  // emitted and no label may be fed. Throws StateError once halted and
  // ProtocolError when a previous round still awaits its label.
  std::optional<int> round(std::int32_t x) override;
  void feed_label(std::int32_t y) override;

  bool halted() const { return halted_; }
  HaltCause halt_cause() const { return halt_cause_; }
  std::int64_t rounds() const { return round_; }
  std::int64_t mistakes() const { return mistakes_; }
  const std::vector<PopRoundRecord>& log() const { return log_; }
  const PopConfig& config() const { return config_; }
  const ChallengeAT& cat() const { return cat_; }
  std::int32_t k() const { return config_.k; }
  OnlineLearner& expert(std::int32_t j) { return *experts_[j]; }
  // Sum of expert votes in the most recent round (instrumentation for the
  // sensitivity checks).
  std::int32_t last_vote_sum() const { return last_vote_sum_; }

 private:
  Pop(const PopConfig& config,
      std::vector<std::unique_ptr<OnlineLearner>> experts,
      std::uint64_t master, int);

  PopConfig config_;
  std::vector<std::unique_ptr<OnlineLearner>> experts_;
  RandomSource ell_src_;
  RandomSource coin_src_;
  ChallengeAT cat_;
  bool halted_ = false;
  HaltCause halt_cause_ = HaltCause::kNone;
  std::int64_t round_ = 0;
  std::int64_t mistakes_ = 0;
  std::int32_t last_vote_sum_ = 0;
  bool pending_ = false;
  std::int32_t pending_x_ = 0;
  std::int32_t pending_pred_ = 0;
  std::int32_t pending_sigma_ = 0;
  std::int32_t pending_ell_ = 0;
  std::int32_t pending_votes_ = 0;
  std::vector<PopRoundRecord> log_;
};

// Mistake cap for the bounded-mistake variant: halt at the first round the
// privately counted number of mistakes reaches v, for a v in [u, w].
struct MistakeCapParams {
  std::int64_t u = 1;
  std::int64_t w = 2;
  bool draw_v_uniform = false;          // otherwise v = u
  std::optional<std::int64_t> v_override;

  void validate() const;
};

// Pop plus a private counter over the mistake indicator; halting via the
// noisy count crossing v.
class PopUw : public OnlineMechanism {
 public:
  PopUw(const PopConfig& config, const MistakeCapParams& cap,
        std::vector<std::unique_ptr<OnlineLearner>> experts, RandomSource src);

  std::optional<int> round(std::int32_t x) override;
  void feed_label(std::int32_t y) override;

  bool halted() const { return halted_; }
  HaltCause halt_cause() const { return halt_cause_; }
  std::int64_t v() const { return v_; }
  std::int64_t true_mistakes() const { return pop_.mistakes(); }
  std::int64_t cap_count() const { return last_cap_count_; }
  const PrivateCounter& cap_counter() const { return cap_counter_; }
  Pop& pop() { return pop_; }
  const Pop& pop() const { return pop_; }

 private:
  PopUw(const PopConfig& config, const MistakeCapParams& cap,
        std::vector<std::unique_ptr<OnlineLearner>> experts,
        std::uint64_t master, int);

  Pop pop_;
  MistakeCapParams cap_;
  PrivateCounter cap_counter_;
  std::int64_t v_;
  std::int64_t last_cap_count_ = 0;
  std::int32_t pending_pred_ = 0;
  bool halted_ = false;
  HaltCause halt_cause_ = HaltCause::kNone;
};

// Constants for the agnostic phase-restart wrapper. Per phase:
// k = next odd >= c_k d^2 / eps, u = ceil(c_u k d ln T), w = 2u, r = u,
// inner mistake budget M* = m_star_mult * d ln T.
struct AgnosticConstants {
  double c_k = 1.0;
  double c_u = 1.0;
  double c_gamma = 1.0;
  double c_lambda = 1.0;
  double m_star_mult = 1.0;
};

struct PhaseSummary {
  std::int64_t first_round = 0;  // 0-based index into the stream
  std::int64_t rounds = 0;
  std::int64_t mistakes = 0;
  HaltCause cause = HaltCause::kNone;
  std::int32_t k = 0;
  std::int64_t u = 0, w = 0, v = 0;
  std::uint64_t seed = 0;
};

struct AgnosticRunResult {
  std::int64_t total_mistakes = 0;
  std::vector<PhaseSummary> phases;
  std::vector<std::int32_t> predictions;  // one per stream element
};

// Repeatedly runs the bounded-mistake predictor over the stream; each phase
// re-instantiates all mechanism state with a fresh derived seed. A phase
// that retires without answering its current round hands that round to the
// next phase, so every stream element receives exactly one prediction.
AgnosticRunResult agnostic_pop_run(std::shared_ptr<const HypothesisClass> cls,
                                   const std::vector<LabeledExample>& stream,
                                   const PrivacyBudget& budget,
                                   const AgnosticConstants& constants,
                                   std::uint64_t master_seed);

}  // namespace cdp

#endif  // CDP_POP_HPP
