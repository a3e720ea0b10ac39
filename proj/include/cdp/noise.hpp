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

#ifndef CDP_NOISE_HPP
#define CDP_NOISE_HPP

#include "cdp/random_source.hpp"

namespace cdp {

// Scale parameter of a Laplace distribution; must be positive.
struct LaplaceScale {
  double gamma;
  explicit LaplaceScale(double g);
};

// Global switch: when disabled, every Laplace draw is replaced by 0 (the
// uniform is still consumed so stream positions are stable). Algorithm
// randomness (coin flips, expert selection) is not affected. All mechanisms
// in this library draw noise through sample_laplace, so they all honor it.
void set_noise_disabled(bool disabled);
bool noise_disabled();

// Scoped override, restores the previous setting on destruction.
class NoiseGuard {
 public:
  explicit NoiseGuard(bool disabled);
  ~NoiseGuard();
  NoiseGuard(const NoiseGuard&) = delete;
  NoiseGuard& operator=(const NoiseGuard&) = delete;

 private:
  bool previous_;
};

// Inverse-CDF transform: x = -gamma * sign(u - 1/2) * ln(1 - 2|u - 1/2|),
// for u in (0, 1). Exposed so tests can drive it with chosen uniforms.
double laplace_inverse_cdf(double u, double gamma);

// One Laplace(gamma) draw; consumes exactly one uniform from src.
double sample_laplace(RandomSource& src, LaplaceScale scale);

// Noise scale used by the Laplace mechanism: sensitivity / epsilon.
double laplace_mechanism_scale(double sensitivity, double epsilon);

// value + Lap(sensitivity / epsilon).
double laplace_mechanism(double value, double sensitivity, double epsilon,
                         RandomSource& src);

}  // namespace cdp

#endif  // CDP_NOISE_HPP
