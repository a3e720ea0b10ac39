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

#include "cdp/noise.hpp"

#include <atomic>
#include <cmath>

#include "cdp/errors.hpp"

namespace cdp {

namespace {
std::atomic<bool> g_noise_disabled{false};
}  // namespace

LaplaceScale::LaplaceScale(double g) : gamma(g) {
  if (!(g > 0.0) || !std::isfinite(g)) {
    throw ParameterError("LaplaceScale: gamma must be positive, got " +
                         std::to_string(g));
  }
}

void set_noise_disabled(bool disabled) {
  g_noise_disabled.store(disabled, std::memory_order_relaxed);
}

bool noise_disabled() {
  return g_noise_disabled.load(std::memory_order_relaxed);
}

NoiseGuard::NoiseGuard(bool disabled) : previous_(noise_disabled()) {
  set_noise_disabled(disabled);
}

NoiseGuard::~NoiseGuard() { set_noise_disabled(previous_); }

double laplace_inverse_cdf(double u, double gamma) {
  const double v = u - 0.5;
  if (v == 0.0) return 0.0;
  const double sign = v > 0.0 ? 1.0 : -1.0;
  return -gamma * sign * std::log(1.0 - 2.0 * std::fabs(v));
}

double sample_laplace(RandomSource& src, LaplaceScale scale) {
  const double u = src.next_uniform();
  if (noise_disabled()) return 0.0;
  return laplace_inverse_cdf(u, scale.gamma);
}

double laplace_mechanism_scale(double sensitivity, double epsilon) {
  if (!(sensitivity > 0.0)) {
    throw ParameterError("laplace_mechanism: sensitivity must be positive");
  }
  if (!(epsilon > 0.0)) {
    throw ParameterError("laplace_mechanism: epsilon must be positive");
  }
  return sensitivity / epsilon;
}

double laplace_mechanism(double value, double sensitivity, double epsilon,
                         RandomSource& src) {
  const LaplaceScale scale(laplace_mechanism_scale(sensitivity, epsilon));
  return value + sample_laplace(src, scale);
}

}  // namespace cdp
