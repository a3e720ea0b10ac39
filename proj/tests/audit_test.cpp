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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "cdp/audit.hpp"
#include "cdp/errors.hpp"
#include "cdp/games.hpp"
#include "cdp/stats.hpp"

using cdp::AuditParams;
using cdp::GameTranscript;
using cdp::LabeledExample;
using cdp::RandomSource;

namespace {

// Two-round game: round 1 is the (masked) challenge carrying the secret in
// its input; round 2 releases the mechanism's delayed response.
cdp::GameRunner delayed_response_runner(double epsilon, bool leak) {
  return [epsilon, leak](int b, std::uint64_t seed) {
    cdp::DelayedResponseMechanism mech(epsilon, RandomSource(seed), leak);
    cdp::ScriptedAdversary adv(cdp::make_replay_probe_script(
        2, /*challenge_round=*/1, LabeledExample{0, 0}, LabeledExample{1, 0},
        LabeledExample{0, 0}));
    return cdp::run_online_game(mech, adv, 2, 1, b);
  };
}

cdp::GameRunner constant_runner() {
  return [](int, std::uint64_t) {
    GameTranscript t;
    t.released = {0, 1, 0};
    return t;
  };
}

}  // namespace

TEST_CASE("stats: Clopper-Pearson endpoints behave") {
  CHECK(cdp::binom_ci_lower(0, 100, 0.025) == 0.0);
  CHECK(cdp::binom_ci_upper(100, 100, 0.025) == 1.0);
  const double lo = cdp::binom_ci_lower(50, 100, 0.025);
  const double hi = cdp::binom_ci_upper(50, 100, 0.025);
  CHECK(lo < 0.5);
  CHECK(hi > 0.5);
  CHECK(lo > 0.35);
  CHECK(hi < 0.65);
  // Rule-of-three sanity: upper bound for 0/n near 3/n.
  CHECK(cdp::binom_ci_upper(0, 1000, 0.05) ==
        doctest::Approx(3.0 / 1000).epsilon(0.05));
}

TEST_CASE("stats: betainc round trip") {
  for (double p : {0.05, 0.25, 0.5, 0.9}) {
    const double x = cdp::betainc_inv(3.0, 7.0, p);
    CHECK(cdp::betainc(3.0, 7.0, x) == doctest::Approx(p).epsilon(1e-9));
  }
}

TEST_CASE("auditor: bit-independent game reports (near) zero") {
  AuditParams params;
  params.trials = 20000;
  params.prefix_len = 3;
  params.master_seed = 5;
  const auto report = cdp::audit_epsilon("constant", constant_runner(), params,
                                         /*target=*/0.1);
  CHECK(report.lower_bound == 0.0);
  CHECK(report.point_estimate <= 0.05);
  CHECK(report.pass);
}

TEST_CASE("auditor: randomized response at eps=1 is estimated within 10%") {
  AuditParams params;
  params.trials = 1000000;
  params.prefix_len = 2;
  params.master_seed = 11;
  const auto report =
      cdp::audit_epsilon("rr", delayed_response_runner(1.0, false), params);
  CHECK(report.point_estimate >= 0.9);
  CHECK(report.point_estimate <= 1.1);
  // The conservative bound sits below the point estimate but stays useful.
  CHECK(report.lower_bound > 0.8);
  CHECK(report.lower_bound <= report.point_estimate);
}

TEST_CASE("auditor: verbatim leak is flagged and grows with N") {
  AuditParams params;
  params.prefix_len = 2;
  params.master_seed = 13;
  params.trials = 10000;
  const auto small =
      cdp::audit_epsilon("leak", delayed_response_runner(1.0, true), params,
                         /*target=*/2.0);
  CHECK(!small.pass);
  CHECK(small.lower_bound > 2.0);
  params.trials = 100000;
  const auto big =
      cdp::audit_epsilon("leak", delayed_response_runner(1.0, true), params,
                         /*target=*/2.0);
  CHECK(big.lower_bound > small.lower_bound);  // grows with N
}

TEST_CASE("auditor: refuses when trials are too few for the confidence") {
  AuditParams params;
  params.trials = 100;
  try {
    cdp::audit_epsilon("constant", constant_runner(), params);
    FAIL("expected refusal");
  } catch (const cdp::ParameterError& e) {
    const std::string what = e.what();
    CHECK(what.find("need at least") != std::string::npos);
  }
}

TEST_CASE("auditor: delta is subtracted from the numerator") {
  AuditParams params;
  params.trials = 50000;
  params.prefix_len = 2;
  params.delta = 0.5;  // large delta swallows the whole RR gap
  const auto report =
      cdp::audit_epsilon("rr", delayed_response_runner(1.0, false), params);
  CHECK(report.lower_bound == 0.0);
}

TEST_CASE("group check: g=0 gives target = slack and a near-zero bound") {
  AuditParams params;
  params.trials = 5000;
  params.prefix_len = 2;
  const auto report = cdp::group_privacy_check(
      "constant", constant_runner(), /*g=*/0, /*epsilon=*/1.0,
      /*delta=*/1e-5, params, /*target_multiplier=*/1.0, /*slack=*/0.25);
  CHECK(report.target == doctest::Approx(0.25));
  CHECK(report.lower_bound == 0.0);
  CHECK(report.pass);
}

TEST_CASE("group check: g=1 matches the base audit bound shape") {
  AuditParams params;
  params.trials = 50000;
  params.prefix_len = 2;
  params.master_seed = 21;
  const auto report = cdp::group_privacy_check(
      "rr", delayed_response_runner(1.0, false), /*g=*/1, 1.0, 1e-5, params,
      /*target_multiplier=*/4.0, /*slack=*/0.5);
  CHECK(report.target == doctest::Approx(4.5));
  CHECK(report.pass);
}
