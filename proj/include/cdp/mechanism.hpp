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

#ifndef CDP_MECHANISM_HPP
#define CDP_MECHANISM_HPP

#include <cstdint>
#include <optional>

namespace cdp {

// Round contract for online mechanisms as seen by the game harness: each
// round the mechanism receives x, emits an answer, then receives the true
// label. round() returning nullopt means the mechanism halted without
// answering this round; the game ends there.
class OnlineMechanism {
 public:
  virtual ~OnlineMechanism() = default;
  virtual std::optional<int> round(std::int32_t x) = 0;
  virtual void feed_label(std::int32_t y) = 0;
};

}  // namespace cdp

#endif  // CDP_MECHANISM_HPP
