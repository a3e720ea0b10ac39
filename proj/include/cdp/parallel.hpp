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

#ifndef CDP_PARALLEL_HPP
#define CDP_PARALLEL_HPP

#include <cstdint>
#include <functional>

namespace cdp {

// requested <= 0 resolves to the hardware thread count.
int resolve_workers(int requested);

// Splits [0, count) into contiguous chunks, one worker thread per chunk.
// Each invocation gets (begin, end). Results must be keyed by index so the
// merge is independent of the partition; exceptions propagate to the caller.
void parallel_chunks(std::int64_t count, int workers,
                     const std::function<void(std::int64_t, std::int64_t)>& fn);

}  // namespace cdp

#endif  // CDP_PARALLEL_HPP
