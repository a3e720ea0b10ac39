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

#include "cdp/learners.hpp"

#include <algorithm>
#include <cmath>

#include "cdp/errors.hpp"

namespace cdp {

SoaLearner::SoaLearner(std::shared_ptr<const HypothesisClass> cls)
    : SoaLearner(cls, std::make_shared<LdimCache>(cls)) {}

SoaLearner::SoaLearner(std::shared_ptr<const HypothesisClass> cls,
                       std::shared_ptr<LdimCache> cache)
    : cls_(std::move(cls)), cache_(std::move(cache)) {
  if (!cls_) throw ParameterError("SoaLearner: null class");
  version_ = all_rows(*cls_);
}

int SoaLearner::predict(std::int32_t x) {
  auto hit = predict_memo_.find(x);
  if (hit != predict_memo_.end()) return hit->second;
  RowSet zeros, ones;
  zeros.reserve(version_.size());
  ones.reserve(version_.size());
  for (std::uint32_t r : version_) {
    (cls_->label(static_cast<std::int32_t>(r), x) ? ones : zeros).push_back(r);
  }
  const int score0 = zeros.empty() ? -1 : cache_->ldim(zeros);
  const int score1 = ones.empty() ? -1 : cache_->ldim(ones);
  const int label = score1 >= score0 ? 1 : 0;  // tie -> 1
  predict_memo_.emplace(x, label);
  return label;
}

void SoaLearner::update(std::int32_t x, std::int32_t y) {
  RowSet next;
  next.reserve(version_.size());
  for (std::uint32_t r : version_) {
    if (cls_->label(static_cast<std::int32_t>(r), x) == y) next.push_back(r);
  }
  if (next.empty()) {
    throw ContractViolation(
        "SoaLearner: update empties the version space; stream not realizable");
  }
  version_ = std::move(next);
  predict_memo_.clear();
}

std::unique_ptr<OnlineLearner> SoaLearner::snapshot() const {
  return std::make_unique<SoaLearner>(*this);
}

void RestartingSoaLearner::update(std::int32_t x, std::int32_t y) {
  RowSet next;
  next.reserve(version_.size());
  for (std::uint32_t r : version_) {
    if (cls_->label(static_cast<std::int32_t>(r), x) == y) next.push_back(r);
  }
  if (next.empty()) {
    ++restarts_;
    for (std::uint32_t r = 0; r < static_cast<std::uint32_t>(cls_->size());
         ++r) {
      if (cls_->label(static_cast<std::int32_t>(r), x) == y) next.push_back(r);
    }
    if (next.empty()) {
      // No hypothesis labels x with y at all; keep the full class.
      next = all_rows(*cls_);
    }
  }
  version_ = std::move(next);
  predict_memo_.clear();
}

std::unique_ptr<OnlineLearner> RestartingSoaLearner::snapshot() const {
  return std::make_unique<RestartingSoaLearner>(*this);
}

HalvingLearner::HalvingLearner(std::shared_ptr<const HypothesisClass> cls)
    : cls_(std::move(cls)) {
  if (!cls_) throw ParameterError("HalvingLearner: null class");
  version_ = all_rows(*cls_);
}

int HalvingLearner::predict(std::int32_t x) {
  std::size_t ones = 0;
  for (std::uint32_t r : version_) {
    ones += static_cast<std::size_t>(
        cls_->label(static_cast<std::int32_t>(r), x));
  }
  return 2 * ones >= version_.size() ? 1 : 0;  // tie -> 1
}

void HalvingLearner::update(std::int32_t x, std::int32_t y) {
  RowSet next;
  next.reserve(version_.size());
  for (std::uint32_t r : version_) {
    if (cls_->label(static_cast<std::int32_t>(r), x) == y) next.push_back(r);
  }
  if (next.empty()) {
    throw ContractViolation(
        "HalvingLearner: update empties the version space");
  }
  version_ = std::move(next);
}

std::unique_ptr<OnlineLearner> HalvingLearner::snapshot() const {
  return std::make_unique<HalvingLearner>(*this);
}

AgnosticExpertLearner::AgnosticExpertLearner(
    std::shared_ptr<const HypothesisClass> cls,
    std::shared_ptr<LdimCache> cache, double mistake_budget,
    std::int64_t horizon)
    : cls_(cls), soa_(cls, std::move(cache)) {
  if (!(mistake_budget >= 0.0)) {
    throw ParameterError("AgnosticExpertLearner: mistake budget must be >= 0");
  }
  if (horizon < 1) {
    throw ParameterError("AgnosticExpertLearner: horizon must be >= 1");
  }
  const double pool = static_cast<double>(cls_->size()) + 1.0;
  const double log_pool = std::log(pool);
  eta_ = std::min(0.5, std::sqrt(log_pool /
                                 std::max({mistake_budget, log_pool, 1.0})));
  weights_.assign(static_cast<std::size_t>(cls_->size()) + 1, 1.0);
}

int AgnosticExpertLearner::predict(std::int32_t x) {
  double vote[2] = {0.0, 0.0};
  vote[soa_.predict(x)] += weights_[0];
  for (std::int32_t r = 0; r < cls_->size(); ++r) {
    vote[cls_->label(r, x)] += weights_[static_cast<std::size_t>(r) + 1];
  }
  return vote[1] >= vote[0] ? 1 : 0;  // tie -> 1
}

void AgnosticExpertLearner::update(std::int32_t x, std::int32_t y) {
  const double penalty = std::exp(-eta_);
  if (soa_.predict(x) != y) weights_[0] *= penalty;
  for (std::int32_t r = 0; r < cls_->size(); ++r) {
    if (cls_->label(r, x) != y) {
      weights_[static_cast<std::size_t>(r) + 1] *= penalty;
    }
  }
  soa_.update(x, y);
  const double top = *std::max_element(weights_.begin(), weights_.end());
  if (top < 1e-290) {
    for (double& w : weights_) w /= top;
  }
}

std::unique_ptr<OnlineLearner> AgnosticExpertLearner::snapshot() const {
  return std::make_unique<AgnosticExpertLearner>(*this);
}

std::unique_ptr<OnlineLearner> CoinLearner::snapshot() const {
  auto copy = std::make_unique<CoinLearner>(RandomSource(src_.seed()));
  // Replay the sampling stream so the duplicate continues from the same
  // position rather than from the seed.
  for (std::uint64_t i = 0; i < src_.draws(); ++i) copy->src_.next_u64();
  return copy;
}

std::vector<LabeledExample> make_realizable_stream(
    std::shared_ptr<const HypothesisClass> cls, std::int32_t h_index,
    std::int64_t length, StreamStyle style, RandomSource& src,
    OnlineLearner* probe) {
  if (!cls) throw ParameterError("make_realizable_stream: null class");
  if (h_index < 0 || h_index >= cls->size()) {
    throw ParameterError("make_realizable_stream: h_index out of range");
  }
  if (length < 0) {
    throw ParameterError("make_realizable_stream: negative length");
  }
  const std::int32_t n = cls->domain_size();
  std::unique_ptr<OnlineLearner> default_probe;
  if (style == StreamStyle::kMistakeForcing && probe == nullptr) {
    default_probe = std::make_unique<HalvingLearner>(cls);
    probe = default_probe.get();
  }

  std::vector<LabeledExample> stream;
  stream.reserve(static_cast<std::size_t>(length));
  std::vector<std::int32_t> disagree;
  for (std::int64_t t = 0; t < length; ++t) {
    std::int32_t x = 0;
    switch (style) {
      case StreamStyle::kUniform:
        x = static_cast<std::int32_t>(src.uniform_int(n));
        break;
      case StreamStyle::kRoundRobin:
        x = static_cast<std::int32_t>(t % n);
        break;
      case StreamStyle::kMistakeForcing: {
        disagree.clear();
        for (std::int32_t c = 0; c < n; ++c) {
          if (probe->predict(c) != cls->label(h_index, c)) {
            disagree.push_back(c);
          }
        }
        if (disagree.empty()) {
          x = static_cast<std::int32_t>(src.uniform_int(n));
        } else {
          x = disagree[src.uniform_int(disagree.size())];
        }
        break;
      }
    }
    const std::int32_t y = cls->label(h_index, x);
    if (style == StreamStyle::kMistakeForcing) probe->update(x, y);
    stream.push_back(LabeledExample{x, y});
  }
  return stream;
}

std::int64_t disagreements_with(const HypothesisClass& cls,
                                std::int32_t h_index,
                                const std::vector<LabeledExample>& stream) {
  std::int64_t count = 0;
  for (const auto& e : stream) {
    count += cls.label(h_index, e.x) != e.y ? 1 : 0;
  }
  return count;
}

std::int64_t stream_opt(const HypothesisClass& cls,
                        const std::vector<LabeledExample>& stream) {
  std::int64_t best = static_cast<std::int64_t>(stream.size());
  for (std::int32_t r = 0; r < cls.size(); ++r) {
    best = std::min(best, disagreements_with(cls, r, stream));
  }
  return best;
}

}  // namespace cdp
