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

// Experiment drivers shared by the CLI and the acceptance suite. Every
// driver is deterministic in its (seed, trial index) pairs and records the
// full resolved configuration in its output.

#ifndef CDP_EXPERIMENTS_HPP
#define CDP_EXPERIMENTS_HPP

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdp/audit.hpp"
#include "cdp/games.hpp"
#include "cdp/pop.hpp"

namespace cdp {

// Line-delimited JSON records plus one two-column "<stem>.<metric>.dat"
// file per metric. The header embeds the resolved config; a timestamp field
// is the only part of the output excluded from byte-replay guarantees.
class ResultWriter {
 public:
  explicit ResultWriter(std::string stem);
  ~ResultWriter();

  void write_header(const std::string& command, const nlohmann::json& config);
  void write_record(const nlohmann::json& record);
  void add_metric_point(const std::string& metric, double x, double y);
  void finish();

  const std::string& stem() const { return stem_; }

 private:
  std::string stem_;
  std::ofstream out_;
  bool finished_ = false;
  std::map<std::string, std::vector<std::pair<double, double>>> metrics_;
};

// ---------------------------------------------------------------------------
// Counter error envelope.

struct CounterBenchConfig {
  std::vector<std::int64_t> horizons = {64,   128,  256,  512,  1024,
                                        2048, 4096, 8192, 16384};
  double epsilon = 1.0;
  double beta = 0.05;
  int trials = 50;  // seeds per horizon
  std::uint64_t seed = 1;
  int workers = 1;
};

struct CounterBenchPoint {
  std::int64_t horizon = 0;
  double median_max_error = 0;
  double p95_max_error = 0;
  double max_max_error = 0;
};

struct CounterBenchResult {
  std::vector<CounterBenchPoint> points;
  double loglog_slope = 0;  // of median max error vs horizon
};

// Per-seed max |estimate - true prefix sum| over a random bit stream.
std::vector<double> counter_max_errors(std::int64_t horizon, double epsilon,
                                       int trials, std::uint64_t seed_base,
                                       int workers);

CounterBenchResult run_counter_bench(const CounterBenchConfig& config,
                                     ResultWriter* writer);

// ---------------------------------------------------------------------------
// POP mistake-bound experiments (SOA experts over a threshold class).

struct PopExperimentConfig {
  std::int32_t domain_n = 64;  // threshold class over n ordered points
  double epsilon = 1.0;
  double delta = 1e-5;
  double beta = 0.05;
  std::int64_t horizon = 10000;
  // Desk-scale parameter rules, recorded in every output:
  // k = next odd >= exp_c_k * d / eps^2, r = ceil(exp_c_r (d k + ln(1/beta))).
  double exp_c_k = 16.0;
  double exp_c_r = 3.0;
  double c_gamma = 0.005;
  double c_lambda = 1.0;
  std::optional<std::int32_t> k_override;
  std::optional<std::int64_t> r_override;
  StreamStyle style = StreamStyle::kMistakeForcing;
  int trials = 100;
  std::uint64_t seed = 1;
  int workers = 1;
};

struct PopTrialResult {
  std::uint64_t trial = 0;
  std::int64_t mistakes = 0;
  std::int64_t rounds = 0;
  HaltCause cause = HaltCause::kNone;
  bool completed = false;  // processed the whole stream without halting
  std::int32_t h_index = 0;
};

struct PopExperimentSummary {
  std::int32_t k = 0;
  std::int64_t r = 0;
  int d = 0;
  std::vector<PopTrialResult> trials;
  double completed_fraction = 0;
  double mistakes_median = 0;
  double mistakes_p95 = 0;
  double mistakes_max = 0;
};

// Resolved (k, r) for a config (after overrides).
std::pair<std::int32_t, std::int64_t> pop_experiment_params(
    const PopExperimentConfig& config, int d);

PopTrialResult run_pop_trial(const PopExperimentConfig& config,
                             std::uint64_t trial_index);

PopExperimentSummary run_pop_experiment(const PopExperimentConfig& config,
                                        ResultWriter* writer);

// Single fully logged run; writes one record per round.
PopTrialResult run_pop_single(const PopExperimentConfig& config,
                              std::uint64_t trial_index, ResultWriter* writer);

struct PopSweepArm {
  std::int32_t domain_n = 0;
  double epsilon = 0;
  PopExperimentSummary summary;
};

std::vector<PopSweepArm> run_pop_sweep(const PopExperimentConfig& base,
                                       const std::vector<std::int32_t>& n_list,
                                       const std::vector<double>& eps_list,
                                       ResultWriter* writer);

// ---------------------------------------------------------------------------
// Coin-game tail experiment.

struct CoinTailConfig {
  std::string strategy = "greedy";  // greedy | pulse | ramp
  std::int64_t budget = 1;
  std::int64_t rounds = 10000;
  std::int64_t runs = 100000;
  std::vector<double> lambdas = {40, 60, 80, 100};
  std::uint64_t seed = 1;
  int workers = 1;
};

struct CoinTailPoint {
  double lambda = 0;
  double empirical = 0;
  double bound = 0;
  double stderr_est = 0;
  bool ok = false;  // empirical <= bound + 3 stderr
};

struct CoinTailResult {
  std::vector<CoinTailPoint> points;
  std::int64_t max_reward = 0;
  bool all_ok = false;
};

std::unique_ptr<CoinStrategy> make_coin_strategy(const std::string& name);

CoinTailResult run_coin_tail(const CoinTailConfig& config,
                             ResultWriter* writer);

// ---------------------------------------------------------------------------
// Audit fixtures.

struct AuditFixtureConfig {
  // rr: delayed randomized response (calibration; true loss = epsilon)
  // leak: verbatim delayed echo (planted violation; must fail)
  // cat: ChallengeAT game with a sensitivity-1 probe adversary
  // pop: OnlineGame on POP with a replay-probe adversary
  // group: g-challenge probe on the ChallengeAT game
  // composition: m randomized-response sessions sharing the bit
  std::string fixture = "rr";
  double epsilon = 1.0;
  double delta = 1e-5;
  std::int64_t trials = 100000;
  int prefix_len = 4;
  double confidence = 0.95;
  double c_priv = 4.0;
  double slack = 0.5;
  int group_g = 2;
  std::int64_t composition_m = 2;
  std::uint64_t seed = 1;
  int workers = 1;
};

AuditReport run_audit_fixture(const AuditFixtureConfig& config,
                              ResultWriter* writer);

// ---------------------------------------------------------------------------
// Agnostic phase-restart experiment over corrupted streams.

struct AgnosticExperimentConfig {
  std::int32_t domain_n = 64;
  double epsilon = 1.0;
  double delta = 1e-5;
  double beta = 0.05;
  std::int64_t horizon = 10000;
  std::vector<std::int64_t> corruption_grid = {0, 50, 200};
  int trials = 20;
  AgnosticConstants constants{/*c_k=*/1.0, /*c_u=*/0.3, /*c_gamma=*/0.005,
                              /*c_lambda=*/1.0, /*m_star_mult=*/1.0};
  std::uint64_t seed = 1;
  int workers = 1;
};

struct AgnosticArmResult {
  std::int64_t corruption = 0;
  double mistakes_median = 0;
  double phases_median = 0;
  double phases_max = 0;
  double opt_median = 0;
};

struct AgnosticExperimentResult {
  int d = 0;
  std::vector<AgnosticArmResult> arms;
};

AgnosticExperimentResult run_agnostic_experiment(
    const AgnosticExperimentConfig& config, ResultWriter* writer);

}  // namespace cdp

#endif  // CDP_EXPERIMENTS_HPP
