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

#include "cdp/stats.hpp"

#include <algorithm>
#include <cmath>

#include "cdp/errors.hpp"

namespace cdp {

namespace {

// Continued fraction for the incomplete beta (Lentz's method).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 400;
  constexpr double kEps = 3e-14;
  constexpr double kFpMin = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double betainc(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw ParameterError("betainc: a, b must be > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                        a * std::log(x) + b * std::log1p(-x);
  const double bt = std::exp(log_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return bt * betacf(a, b, x) / a;
  }
  return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

double betainc_inv(double a, double b, double p) {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (betainc(a, b, mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double binom_ci_lower(std::int64_t successes, std::int64_t trials,
                      double alpha) {
  if (trials < 1 || successes < 0 || successes > trials) {
    throw ParameterError("binom_ci: bad counts");
  }
  if (successes == 0) return 0.0;
  return betainc_inv(static_cast<double>(successes),
                     static_cast<double>(trials - successes) + 1.0, alpha);
}

double binom_ci_upper(std::int64_t successes, std::int64_t trials,
                      double alpha) {
  if (trials < 1 || successes < 0 || successes > trials) {
    throw ParameterError("binom_ci: bad counts");
  }
  if (successes == trials) return 1.0;
  return betainc_inv(static_cast<double>(successes) + 1.0,
                     static_cast<double>(trials - successes), 1.0 - alpha);
}

LinearFit least_squares(const std::vector<double>& xs,
                        const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw ParameterError("least_squares: need two matched samples");
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw ParameterError("least_squares: degenerate xs");
  LinearFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw ParameterError("quantile: empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw ParameterError("quantile: q in [0,1]");
  const double n = static_cast<double>(values.size());
  const double raw = std::ceil(q * n) - 1.0;
  const auto rank = static_cast<std::size_t>(std::clamp(raw, 0.0, n - 1.0));
  std::nth_element(values.begin(),
                   values.begin() + static_cast<std::ptrdiff_t>(rank),
                   values.end());
  return values[rank];
}

}  // namespace cdp
