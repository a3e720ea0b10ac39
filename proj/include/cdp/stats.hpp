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

#ifndef CDP_STATS_HPP
#define CDP_STATS_HPP

#include <cstdint>
#include <vector>

namespace cdp {

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double betainc(double a, double b, double x);

// Inverse of betainc in x for fixed (a, b), by bisection.
double betainc_inv(double a, double b, double p);

// One-sided Clopper-Pearson bounds for a binomial proportion: the returned
// interval endpoint errs on the conservative side at level alpha.
double binom_ci_lower(std::int64_t successes, std::int64_t trials,
                      double alpha);
double binom_ci_upper(std::int64_t successes, std::int64_t trials,
                      double alpha);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

LinearFit least_squares(const std::vector<double>& xs,
                        const std::vector<double>& ys);

// q-quantile (0 <= q <= 1) by nearest-rank on a copy.
double quantile(std::vector<double> values, double q);

}  // namespace cdp

#endif  // CDP_STATS_HPP
