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

#include "cdp/games.hpp"

#include <cmath>

#include "cdp/errors.hpp"

namespace cdp {

GameTranscript run_online_game(OnlineMechanism& mechanism,
                               OnlineAdversary& adversary,
                               std::int64_t horizon, int group_budget,
                               int secret_bit) {
  if (horizon < 1) throw ParameterError("game: horizon must be >= 1");
  if (group_budget < 0) throw ParameterError("game: negative group budget");
  if (secret_bit != 0 && secret_bit != 1) {
    throw ParameterError("game: secret bit must be 0 or 1");
  }
  GameTranscript transcript;
  transcript.adversary_seed = adversary.seed();
  transcript.released.reserve(static_cast<std::size_t>(horizon));
  int challenges = 0;
  for (std::int64_t i = 1; i <= horizon; ++i) {
    const AdversaryMove move = adversary.next(i);
    if (move.challenge != 0 && move.challenge != 1) {
      throw ContractViolation("adversary: challenge bit must be 0 or 1", i);
    }
    challenges += move.challenge;
    if (challenges > group_budget) {
      throw ContractViolation("adversary: challenge budget exceeded", i);
    }
    if (move.challenge == 0 && !(move.input0 == move.input1)) {
      throw ContractViolation(
          "adversary: inputs must coincide on non-challenge rounds", i);
    }
    const LabeledExample& chosen =
        secret_bit == 0 ? move.input0 : move.input1;
    const auto answer = mechanism.round(chosen.x);
    if (!answer) {
      transcript.mech_halted = true;
      break;
    }
    mechanism.feed_label(chosen.y);
    const int released =
        move.challenge == 1 ? kMaskedAnswer : *answer;
    transcript.released.push_back(released);
    adversary.observe(released);
  }
  return transcript;
}

GameTranscript run_challenge_at_game(const ChallengeAtParams& params,
                                     CatAdversary& adversary, int secret_bit,
                                     RandomSource mechanism_src,
                                     int group_budget) {
  if (secret_bit != 0 && secret_bit != 1) {
    throw ParameterError("game: secret bit must be 0 or 1");
  }
  const auto bases = adversary.base_values();
  if (std::fabs(bases.first - bases.second) >
      params.sensitivity + 1e-12) {
    throw ContractViolation(
        "cat adversary: base values farther apart than the sensitivity");
  }
  ChallengeAT cat(params, std::move(mechanism_src));
  GameTranscript transcript;
  transcript.adversary_seed = adversary.seed();
  int challenges = 0;
  const double base = secret_bit == 0 ? bases.first : bases.second;
  for (std::int64_t i = 1; i <= params.horizon; ++i) {
    const CatMove move = adversary.next(i);
    if (move.challenge != 0 && move.challenge != 1) {
      throw ContractViolation("cat adversary: challenge bit must be 0 or 1",
                              i);
    }
    challenges += move.challenge;
    if (challenges > group_budget) {
      throw ContractViolation("cat adversary: challenge budget exceeded", i);
    }
    if (move.challenge == 0 && move.offset0 != move.offset1) {
      throw ContractViolation(
          "cat adversary: query offsets must coincide off-challenge", i);
    }
    const double offset = secret_bit == 0 ? move.offset0 : move.offset1;
    const int sigma = cat.step(base + offset);
    const int released = move.challenge == 1 ? kMaskedAnswer : sigma;
    transcript.released.push_back(released);
    adversary.observe(released);
    if (cat.halted()) {
      transcript.mech_halted = true;
      break;
    }
  }
  return transcript;
}

std::vector<GameTranscript> run_composition_game(MetaAdversary& meta,
                                                 int secret_bit) {
  const std::int64_t m = meta.sessions();
  if (m < 1) throw ParameterError("composition: need at least one session");
  std::vector<GameTranscript> view;
  view.reserve(static_cast<std::size_t>(m));
  for (std::int64_t ell = 0; ell < m; ++ell) {
    GameSession session = meta.make_session(ell);
    if (!session.mechanism || !session.adversary) {
      throw ParameterError("composition: null session parts");
    }
    GameTranscript t =
        run_online_game(*session.mechanism, *session.adversary,
                        session.horizon, session.group_budget, secret_bit);
    meta.observe(t);
    view.push_back(std::move(t));
  }
  return view;
}

double composition_epsilon(std::int64_t m, double epsilon,
                           double delta_prime) {
  if (m < 1 || !(epsilon > 0.0) || !(delta_prime > 0.0 && delta_prime < 1.0)) {
    throw ParameterError("composition_epsilon: bad arguments");
  }
  const double md = static_cast<double>(m);
  return std::sqrt(2.0 * md * std::log(1.0 / delta_prime)) * epsilon +
         md * epsilon * (std::exp(epsilon) - 1.0);
}

std::int64_t run_coin_game(CoinStrategy& strategy, std::int64_t budget,
                           std::int64_t rounds, RandomSource& src) {
  if (budget < 0) throw ParameterError("coin game: negative budget");
  if (rounds < 0) throw ParameterError("coin game: negative round count");
  std::int64_t reward = 0;
  for (std::int64_t i = 1; i <= rounds; ++i) {
    const auto [p, q] = strategy.choose(i);
    if (!(p >= 0.0) || p > 5.0 / 6.0 + 1e-12) {
      throw ContractViolation("coin strategy: p outside [0, 5/6]", i);
    }
    if (q < p / 5.0 - 1e-12 || q > 1.0 - p + 1e-12) {
      throw ContractViolation("coin strategy: q outside [p/5, 1-p]", i);
    }
    const double u = src.next_uniform();
    const int outcome = u < p ? 1 : (u < p + q ? 2 : 0);
    strategy.observe(outcome);
    if (outcome == 1 && budget > 0) {
      ++reward;
    } else if (outcome == 2) {
      --budget;
    }
  }
  return reward;
}

double coin_game_tail_bound(double lambda, std::int64_t budget) {
  return std::exp(-lambda / 6.0 + 3.0 * (static_cast<double>(budget) + 1.0));
}

std::pair<double, double> GreedyCoinStrategy::choose(std::int64_t) {
  return {5.0 / 6.0, 1.0 / 6.0};
}

void GreedyCoinStrategy::observe(int) {}

std::pair<double, double> PulseCoinStrategy::choose(std::int64_t) {
  if (cooldown_) return {0.0, 0.0};
  return {5.0 / 6.0, 1.0 / 6.0};
}

void PulseCoinStrategy::observe(int outcome) { cooldown_ = outcome == 2; }

std::pair<double, double> RampCoinStrategy::choose(std::int64_t) {
  const double ramp =
      std::min(1.0, (1.0 + static_cast<double>(rewards_seen_)) / 20.0);
  const double p = (5.0 / 6.0) * ramp;
  return {p, p / 5.0};
}

void RampCoinStrategy::observe(int outcome) {
  if (outcome == 1) ++rewards_seen_;
}

ScriptedAdversary::ScriptedAdversary(std::vector<AdversaryMove> moves,
                                     std::uint64_t seed)
    : moves_(std::move(moves)), seed_(seed) {}

AdversaryMove ScriptedAdversary::next(std::int64_t round) {
  const auto idx = static_cast<std::size_t>(round - 1);
  if (idx >= moves_.size()) {
    throw ContractViolation("scripted adversary: script exhausted", round);
  }
  return moves_[idx];
}

ScriptedCatAdversary::ScriptedCatAdversary(std::pair<double, double> bases,
                                           std::vector<CatMove> moves,
                                           std::uint64_t seed)
    : bases_(bases), moves_(std::move(moves)), seed_(seed) {}

CatMove ScriptedCatAdversary::next(std::int64_t round) {
  const auto idx = static_cast<std::size_t>(round - 1);
  if (idx >= moves_.size()) {
    throw ContractViolation("scripted cat adversary: script exhausted",
                            round);
  }
  return moves_[idx];
}

DelayedResponseMechanism::DelayedResponseMechanism(double epsilon,
                                                   RandomSource src,
                                                   bool leak_verbatim)
    : epsilon_(epsilon), src_(std::move(src)), leak_verbatim_(leak_verbatim) {
  if (!(epsilon > 0.0)) {
    throw ParameterError("DelayedResponseMechanism: epsilon must be > 0");
  }
}

std::optional<int> DelayedResponseMechanism::round(std::int32_t x) {
  ++round_;
  if (round_ == 1) {
    memorized_ = x == 0 ? 0 : 1;
    return 0;
  }
  if (round_ == 2) {
    if (leak_verbatim_) return memorized_;
    const double keep = std::exp(epsilon_) / (1.0 + std::exp(epsilon_));
    const bool flip = src_.next_uniform() >= keep;
    return flip ? 1 - memorized_ : memorized_;
  }
  return 0;
}

std::vector<AdversaryMove> make_replay_probe_script(
    std::int64_t horizon, std::int64_t challenge_round, LabeledExample a,
    LabeledExample b, LabeledExample filler) {
  std::vector<AdversaryMove> script;
  script.reserve(static_cast<std::size_t>(horizon));
  for (std::int64_t i = 1; i <= horizon; ++i) {
    if (i == challenge_round) {
      script.push_back(AdversaryMove{1, a, b});
    } else {
      script.push_back(AdversaryMove{0, filler, filler});
    }
  }
  return script;
}

}  // namespace cdp
