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

#ifndef CDP_BUDGET_HPP
#define CDP_BUDGET_HPP

#include <cstdint>

#include "cdp/errors.hpp"

namespace cdp {

// (epsilon, delta, beta, horizon) bundle threaded through every mechanism.
// epsilon: privacy loss; delta: privacy failure probability; beta: utility
// failure probability; horizon: number of rounds, known up front.
struct PrivacyBudget {
  double epsilon = 1.0;
  double delta = 1e-5;
  double beta = 0.05;
  std::int64_t horizon = 1;

  void validate() const {
    if (!(epsilon > 0.0)) throw ParameterError("budget: epsilon must be > 0");
    if (!(delta > 0.0 && delta < 1.0)) {
      throw ParameterError("budget: delta must be in (0, 1)");
    }
    if (!(beta > 0.0 && beta < 1.0)) {
      throw ParameterError("budget: beta must be in (0, 1)");
    }
    if (horizon < 1) throw ParameterError("budget: horizon must be >= 1");
  }
};

}  // namespace cdp

#endif  // CDP_BUDGET_HPP
