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

#ifndef CDP_LEARNERS_HPP
#define CDP_LEARNERS_HPP

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "cdp/hypothesis.hpp"
#include "cdp/ldim.hpp"
#include "cdp/random_source.hpp"

namespace cdp {

// Behavioral contract for online learners.
//
// predict must not change the learned state: repeated calls with no
// intervening update return the same label for deterministic learners (and
// the same distribution for stochastic ones, which may advance an internal
// sampling stream). snapshot yields an independent duplicate; updating one
// copy never affects the other.
class OnlineLearner {
 public:
  virtual ~OnlineLearner() = default;
  virtual int predict(std::int32_t x) = 0;
  virtual void update(std::int32_t x, std::int32_t y) = 0;
  virtual std::unique_ptr<OnlineLearner> snapshot() const = 0;
};

// Littlestone's standard optimal algorithm: predict the label whose
// version-space restriction has the larger Littlestone dimension (ties to
// label 1); update intersects the version space with the consistent rows.
// Makes at most ldim(H) mistakes on realizable streams.
class SoaLearner : public OnlineLearner {
 public:
  explicit SoaLearner(std::shared_ptr<const HypothesisClass> cls);
  SoaLearner(std::shared_ptr<const HypothesisClass> cls,
             std::shared_ptr<LdimCache> cache);

  int predict(std::int32_t x) override;
  // Throws ContractViolation if the update would empty the version space
  // (the stream was claimed realizable but is not).
  void update(std::int32_t x, std::int32_t y) override;
  std::unique_ptr<OnlineLearner> snapshot() const override;

  const RowSet& version_space() const { return version_; }

 protected:
  std::shared_ptr<const HypothesisClass> cls_;
  std::shared_ptr<LdimCache> cache_;
  RowSet version_;
  std::unordered_map<std::int32_t, int> predict_memo_;  // cleared on update
};

// SOA made total: an update that would empty the version space resets it to
// the full class first (and ignores the example if even the full class has
// no consistent row). Suited to adversarial/agnostic inputs.
class RestartingSoaLearner : public SoaLearner {
 public:
  using SoaLearner::SoaLearner;
  void update(std::int32_t x, std::int32_t y) override;
  std::unique_ptr<OnlineLearner> snapshot() const override;
  std::int64_t restarts() const { return restarts_; }

 private:
  std::int64_t restarts_ = 0;
};

// Majority vote over surviving rows (ties to label 1); every update erases
// the inconsistent rows. Makes at most floor(log2 |H|) mistakes on
// realizable streams.
class HalvingLearner : public OnlineLearner {
 public:
  explicit HalvingLearner(std::shared_ptr<const HypothesisClass> cls);

  int predict(std::int32_t x) override;
  void update(std::int32_t x, std::int32_t y) override;
  std::unique_ptr<OnlineLearner> snapshot() const override;

  const RowSet& version_space() const { return version_; }

 private:
  std::shared_ptr<const HypothesisClass> cls_;
  RowSet version_;
};

// Deterministic learner for arbitrary (not necessarily realizable) streams:
// multiplicative weights over a pool of one restarting-SOA expert plus one
// expert per hypothesis. The learning rate is tuned from the mistake budget
// M*; the intended guarantee shape is loss <= O(M* + ldim(H) ln T) whenever
// some hypothesis errs at most M* times, and is checked empirically.
class AgnosticExpertLearner : public OnlineLearner {
 public:
  AgnosticExpertLearner(std::shared_ptr<const HypothesisClass> cls,
                        std::shared_ptr<LdimCache> cache,
                        double mistake_budget, std::int64_t horizon);

  int predict(std::int32_t x) override;
  void update(std::int32_t x, std::int32_t y) override;
  std::unique_ptr<OnlineLearner> snapshot() const override;

  double eta() const { return eta_; }

 private:
  std::shared_ptr<const HypothesisClass> cls_;
  RestartingSoaLearner soa_;
  double eta_;
  std::vector<double> weights_;  // [0] = restarting SOA, [1..|H|] per row
};

// Predict by a fair coin; used as a baseline in games and tests.
class CoinLearner : public OnlineLearner {
 public:
  explicit CoinLearner(RandomSource src) : src_(std::move(src)) {}
  int predict(std::int32_t) override { return src_.fair_bit(); }
  void update(std::int32_t, std::int32_t) override {}
  std::unique_ptr<OnlineLearner> snapshot() const override;

 private:
  RandomSource src_;
};

enum class StreamStyle { kUniform, kMistakeForcing, kRoundRobin };

// Labeled stream consistent with row h_index. x-selection per style:
// uniform random, round robin, or mistake-forcing (each round, a uniformly
// random point on which the probe learner currently disagrees with h, if
// any). The probe defaults to a fresh Halving learner; pass one to force
// against a specific learner. The probe is updated with every emitted pair.
std::vector<LabeledExample> make_realizable_stream(
    std::shared_ptr<const HypothesisClass> cls, std::int32_t h_index,
    std::int64_t length, StreamStyle style, RandomSource& src,
    OnlineLearner* probe = nullptr);

// Number of labels in the stream that disagree with row h_index.
std::int64_t disagreements_with(const HypothesisClass& cls,
                                std::int32_t h_index,
                                const std::vector<LabeledExample>& stream);

// min over rows of disagreements_with: the offline optimum OPT.
std::int64_t stream_opt(const HypothesisClass& cls,
                        const std::vector<LabeledExample>& stream);

}  // namespace cdp

#endif  // CDP_LEARNERS_HPP
