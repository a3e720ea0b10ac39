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

#ifndef CDP_RANDOM_SOURCE_HPP
#define CDP_RANDOM_SOURCE_HPP

#include <cstdint>

namespace cdp {

// Seeded deterministic generator (splitmix64). Bit-exact across platforms,
// cheap to fork into independent streams keyed by (seed, index).
//
// A source is single-owner: move-only, never shared between mechanisms or
// threads. Distinct mechanisms get distinct derived sources.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed), state_(seed) {}

  RandomSource(RandomSource&&) noexcept = default;
  RandomSource& operator=(RandomSource&&) noexcept = default;
  RandomSource(const RandomSource&) = delete;
  RandomSource& operator=(const RandomSource&) = delete;

  // Independent stream for (master, index). Used to hand one master seed to
  // many trials, tree nodes, or sub-mechanisms without sharing state.
  static RandomSource derived(std::uint64_t master, std::uint64_t index) {
    return RandomSource(mix(master + kGolden * (index + 1)));
  }

  std::uint64_t next_u64() {
    ++draws_;
    state_ += kGolden;
    return mix(state_);
  }

  // Uniform draw strictly inside (0, 1); consumes exactly one u64.
  double next_uniform() {
    const std::uint64_t bits = next_u64() >> 11;  // top 53 bits
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  // Unbiased integer in [0, n); may consume several u64s (rejection).
  std::uint64_t uniform_int(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  int fair_bit() { return static_cast<int>(next_u64() >> 63); }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return draws_; }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t seed_;
  std::uint64_t state_;
  std::uint64_t draws_ = 0;
};

}  // namespace cdp

#endif  // CDP_RANDOM_SOURCE_HPP
