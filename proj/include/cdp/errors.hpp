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

#ifndef CDP_ERRORS_HPP
#define CDP_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cdp {

// Bad constructor or call arguments (non-positive scale, zero horizon, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation not legal in the current state (query after halt, feed past
// horizon).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// round()/feed_label() called out of order.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An adversary, learner, or strategy broke its behavioral contract.
// Carries the 1-based round at which the violation was detected, or -1.
class ContractViolation : public std::runtime_error {
 public:
  explicit ContractViolation(const std::string& what, std::int64_t round = -1)
      : std::runtime_error(round >= 0 ? what + " (round " +
                                            std::to_string(round) + ")"
                                      : what),
        round_(round) {}

  std::int64_t round() const { return round_; }

 private:
  std::int64_t round_;
};

}  // namespace cdp

#endif  // CDP_ERRORS_HPP
