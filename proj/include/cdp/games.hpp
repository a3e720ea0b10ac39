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

#ifndef CDP_GAMES_HPP
#define CDP_GAMES_HPP

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "cdp/hypothesis.hpp"
#include "cdp/mechanism.hpp"
#include "cdp/random_source.hpp"
#include "cdp/sparse.hpp"

namespace cdp {

// Released answer at a masked (challenge) round.
inline constexpr int kMaskedAnswer = -1;

// The adversary's view of a game run: the released answers (challenge
// rounds carry kMaskedAnswer) plus the adversary's randomness seed. The
// distribution of this object over the secret bit is what privacy
// constrains.
struct GameTranscript {
  std::uint64_t adversary_seed = 0;
  std::vector<int> released;
  bool mech_halted = false;
};

// Per round the adversary nominates a challenge bit and a pair of labeled
// inputs; the pair must coincide on non-challenge rounds, and at most
// group_budget rounds may be challenges over the whole run.
struct AdversaryMove {
  int challenge = 0;
  LabeledExample input0;
  LabeledExample input1;
};

class OnlineAdversary {
 public:
  virtual ~OnlineAdversary() = default;
  virtual AdversaryMove next(std::int64_t round) = 0;
  virtual void observe(int released) = 0;
  virtual std::uint64_t seed() const { return 0; }
};

// Faithful round loop: the mechanism sees only the selected inputs, answers
// before receiving the true label, and the harness (never the mechanism)
// masks challenge-round answers out of the transcript. Contract violations
// (budget overrun, mismatched non-challenge pair) throw ContractViolation
// naming the round.
GameTranscript run_online_game(OnlineMechanism& mechanism,
                               OnlineAdversary& adversary,
                               std::int64_t horizon, int group_budget,
                               int secret_bit);

// Adversary for the ChallengeAT game. Neighboring datasets are abstracted
// as two base values whose gap is at most the declared sensitivity; each
// round contributes an offset pair (equal on non-challenge rounds) and the
// value fed to the mechanism is base[b] + offset[b].
struct CatMove {
  int challenge = 0;
  double offset0 = 0.0;
  double offset1 = 0.0;
};

class CatAdversary {
 public:
  virtual ~CatAdversary() = default;
  virtual std::pair<double, double> base_values() = 0;
  virtual CatMove next(std::int64_t round) = 0;
  virtual void observe(int released) = 0;
  virtual std::uint64_t seed() const { return 0; }
};

GameTranscript run_challenge_at_game(const ChallengeAtParams& params,
                                     CatAdversary& adversary, int secret_bit,
                                     RandomSource mechanism_src,
                                     int group_budget = 1);

// A meta adversary sequentially schedules m online games that share one
// secret bit and sees every transcript.
struct GameSession {
  std::unique_ptr<OnlineMechanism> mechanism;
  std::unique_ptr<OnlineAdversary> adversary;
  std::int64_t horizon = 1;
  int group_budget = 1;
};

class MetaAdversary {
 public:
  virtual ~MetaAdversary() = default;
  virtual std::int64_t sessions() = 0;
  virtual GameSession make_session(std::int64_t index) = 0;
  virtual void observe(const GameTranscript& transcript) = 0;
};

std::vector<GameTranscript> run_composition_game(MetaAdversary& meta,
                                                 int secret_bit);

// Advanced-composition target: sqrt(2 m ln(1/delta')) eps + m eps (e^eps - 1).
double composition_epsilon(std::int64_t m, double epsilon,
                           double delta_prime);

// ---------------------------------------------------------------------------
// Coin game: per round the strategy picks p in [0, 5/6] and q in
// [p/5, 1 - p]; X = 1 with probability p (reward while budget lasts),
// X = 2 with probability q (burns budget).

class CoinStrategy {
 public:
  virtual ~CoinStrategy() = default;
  virtual std::pair<double, double> choose(std::int64_t round) = 0;
  virtual void observe(int outcome) = 0;
};

std::int64_t run_coin_game(CoinStrategy& strategy, std::int64_t budget,
                           std::int64_t rounds, RandomSource& src);

// exp(-lambda/6 + 3(budget + 1)), the tail every strategy must respect.
double coin_game_tail_bound(double lambda, std::int64_t budget);

// Reward-maximizing static play: p = 5/6, q = 1/6 every round.
class GreedyCoinStrategy : public CoinStrategy {
 public:
  std::pair<double, double> choose(std::int64_t round) override;
  void observe(int outcome) override;
};

// Adaptive: sits out one round after each observed budget loss.
class PulseCoinStrategy : public CoinStrategy {
 public:
  std::pair<double, double> choose(std::int64_t round) override;
  void observe(int outcome) override;

 private:
  bool cooldown_ = false;
};

// Adaptive: ramps p up with the rewards observed so far, always taking the
// cheapest allowed q = p/5.
class RampCoinStrategy : public CoinStrategy {
 public:
  std::pair<double, double> choose(std::int64_t round) override;
  void observe(int outcome) override;

 private:
  std::int64_t rewards_seen_ = 0;
};

// ---------------------------------------------------------------------------
// Built-in probes and fixtures for the auditor.

// Scripted oblivious adversary: plays a fixed move list, ignores answers.
class ScriptedAdversary : public OnlineAdversary {
 public:
  explicit ScriptedAdversary(std::vector<AdversaryMove> moves,
                             std::uint64_t seed = 0);
  AdversaryMove next(std::int64_t round) override;
  void observe(int released) override {}
  std::uint64_t seed() const override { return seed_; }

 private:
  std::vector<AdversaryMove> moves_;
  std::uint64_t seed_;
};

class ScriptedCatAdversary : public CatAdversary {
 public:
  ScriptedCatAdversary(std::pair<double, double> bases,
                       std::vector<CatMove> moves, std::uint64_t seed = 0);
  std::pair<double, double> base_values() override { return bases_; }
  CatMove next(std::int64_t round) override;
  void observe(int released) override {}
  std::uint64_t seed() const override { return seed_; }

 private:
  std::pair<double, double> bases_;
  std::vector<CatMove> moves_;
  std::uint64_t seed_;
};

// Memorizes the first round's input and releases it at round 2 through a
// randomized response with flip probability 1/(1 + e^eps) (exactly
// eps-DP in the released bit). With leak_verbatim the response is the raw
// input: a planted privacy violation the auditor must catch.
class DelayedResponseMechanism : public OnlineMechanism {
 public:
  DelayedResponseMechanism(double epsilon, RandomSource src,
                           bool leak_verbatim = false);
  std::optional<int> round(std::int32_t x) override;
  void feed_label(std::int32_t) override {}

 private:
  double epsilon_;
  RandomSource src_;
  bool leak_verbatim_;
  std::int64_t round_ = 0;
  std::int32_t memorized_ = 0;
};

// The replay-probe adversary: one challenge round with the two given
// pairs, a fixed filler pair elsewhere.
std::vector<AdversaryMove> make_replay_probe_script(
    std::int64_t horizon, std::int64_t challenge_round, LabeledExample a,
    LabeledExample b, LabeledExample filler);

}  // namespace cdp

#endif  // CDP_GAMES_HPP
