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

#include "cdp/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "cdp/errors.hpp"
#include "cdp/noise.hpp"

namespace cdp {

namespace {
void check_common(double epsilon, double delta, std::int64_t r,
                  double sensitivity) {
  if (!(epsilon > 0.0)) throw ParameterError("sparse: epsilon must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ParameterError("sparse: delta must be in (0, 1)");
  }
  if (r < 1) throw ParameterError("sparse: target_reports must be >= 1");
  if (!(sensitivity > 0.0)) {
    throw ParameterError("sparse: sensitivity must be > 0");
  }
}
}  // namespace

void AboveThresholdParams::validate() const {
  check_common(epsilon, delta, target_reports, sensitivity);
  if (!(c_gamma > 0.0)) throw ParameterError("sparse: c_gamma must be > 0");
}

double AboveThresholdParams::gamma() const {
  const double r = static_cast<double>(target_reports);
  return c_gamma * (sensitivity / epsilon) * std::sqrt(r) *
         std::log(r / delta);
}

AboveThreshold::AboveThreshold(const AboveThresholdParams& params,
                               RandomSource src)
    : params_(params), gamma_(0.0), src_(std::move(src)) {
  params_.validate();
  gamma_ = params_.gamma();
}

int AboveThreshold::step(double query_value) {
  if (halted_) throw StateError("AboveThreshold: query after halt");
  ++rounds_;
  const double noise = sample_laplace(src_, LaplaceScale(gamma_));
  max_noise_over_gamma_ =
      std::max(max_noise_over_gamma_, std::fabs(noise) / gamma_);
  const double noisy = query_value + noise;
  const int sigma = noisy >= params_.threshold ? 1 : 0;
  positives_ += sigma;
  if (positives_ >= params_.target_reports) halted_ = true;
  return sigma;
}

void ChallengeAtParams::validate() const {
  check_common(epsilon, delta, target_reports, sensitivity);
  if (horizon < 1) throw ParameterError("sparse: horizon must be >= 1");
  if (!(beta > 0.0 && beta < 1.0)) {
    throw ParameterError("sparse: beta must be in (0, 1)");
  }
  if (!(c_gamma > 0.0) || !(c_lambda >= 0.0)) {
    throw ParameterError("sparse: bad constants");
  }
}

double ChallengeAtParams::lambda() const {
  const double t = static_cast<double>(horizon);
  return c_lambda * (1.0 / epsilon) * std::log(t) * std::log(t / beta);
}

double ChallengeAtParams::gamma() const {
  const double rl = static_cast<double>(target_reports) + lambda();
  return c_gamma * (sensitivity / epsilon) * std::sqrt(rl) *
         std::log(rl / delta);
}

namespace {
ChallengeAtParams validated(ChallengeAtParams p) {
  p.validate();
  return p;
}
}  // namespace

ChallengeAT::ChallengeAT(const ChallengeAtParams& params, RandomSource src)
    : ChallengeAT(params, src.next_u64()) {}

ChallengeAT::ChallengeAT(const ChallengeAtParams& params, std::uint64_t master)
    : params_(validated(params)),
      gamma_(params_.gamma()),
      lambda_(params_.lambda()),
      noise_src_(RandomSource::derived(master, 1)),
      counter_(params_.horizon, params_.epsilon,
               RandomSource::derived(master, 2)) {}

int ChallengeAT::step(double query_value) {
  if (halted_) throw StateError("ChallengeAT: query after halt");
  if (rounds_ >= params_.horizon) {
    throw StateError("ChallengeAT: query past horizon");
  }
  ++rounds_;
  const double noise = sample_laplace(noise_src_, LaplaceScale(gamma_));
  max_noise_over_gamma_ =
      std::max(max_noise_over_gamma_, std::fabs(noise) / gamma_);
  const double noisy = query_value + noise;
  const int sigma = noisy >= params_.threshold ? 1 : 0;
  exact_positives_ += sigma;
  last_count_ = counter_.feed(sigma);
  if (last_count_ >= params_.target_reports) halted_ = true;
  return sigma;
}

}  // namespace cdp
