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

#include "cdp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>

#include "cdp/counter.hpp"
#include "cdp/errors.hpp"
#include "cdp/parallel.hpp"
#include "cdp/stats.hpp"

namespace cdp {

namespace {

using nlohmann::json;

std::string now_utc() {
  char buf[32];
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::int32_t next_odd_at_least(double value) {
  auto k = static_cast<std::int64_t>(std::ceil(std::max(1.0, value) - 1e-9));
  if (k % 2 == 0) ++k;
  return static_cast<std::int32_t>(k);
}

const char* halt_cause_name(HaltCause cause) {
  switch (cause) {
    case HaltCause::kNone:
      return "none";
    case HaltCause::kCatHalted:
      return "cat-halted";
    case HaltCause::kMistakeCap:
      return "mistake-cap";
  }
  return "unknown";
}

}  // namespace

ResultWriter::ResultWriter(std::string stem) : stem_(std::move(stem)) {
  out_.open(stem_ + ".jsonl");
  if (!out_) throw ParameterError("ResultWriter: cannot write " + stem_ +
                                  ".jsonl");
}

ResultWriter::~ResultWriter() { finish(); }

void ResultWriter::write_header(const std::string& command,
                                const json& config) {
  json header;
  header["record"] = "header";
  header["command"] = command;
  header["timestamp"] = now_utc();
  header["config"] = config;
  out_ << header.dump() << "\n";
}

void ResultWriter::write_record(const json& record) {
  out_ << record.dump() << "\n";
}

void ResultWriter::add_metric_point(const std::string& metric, double x,
                                    double y) {
  metrics_[metric].emplace_back(x, y);
}

void ResultWriter::finish() {
  if (finished_) return;
  finished_ = true;
  out_.flush();
  for (const auto& [name, points] : metrics_) {
    std::ofstream dat(stem_ + "." + name + ".dat");
    for (const auto& [x, y] : points) dat << x << " " << y << "\n";
  }
}

// ---------------------------------------------------------------------------

std::vector<double> counter_max_errors(std::int64_t horizon, double epsilon,
                                       int trials, std::uint64_t seed_base,
                                       int workers) {
  std::vector<double> errors(static_cast<std::size_t>(trials), 0.0);
  parallel_chunks(trials, workers, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t t = begin; t < end; ++t) {
      PrivateCounter counter(
          horizon, epsilon,
          RandomSource::derived(seed_base, static_cast<std::uint64_t>(2 * t)));
      RandomSource bits =
          RandomSource::derived(seed_base, static_cast<std::uint64_t>(2 * t + 1));
      for (std::int64_t i = 0; i < horizon; ++i) {
        counter.feed(static_cast<int>(bits.uniform_int(2)));
      }
      errors[static_cast<std::size_t>(t)] =
          static_cast<double>(counter.max_abs_error());
    }
  });
  return errors;
}

CounterBenchResult run_counter_bench(const CounterBenchConfig& config,
                                     ResultWriter* writer) {
  if (config.horizons.empty()) {
    throw ParameterError("counter-bench: empty horizon grid");
  }
  if (writer) {
    writer->write_header("counter-bench",
                         json{{"horizons", config.horizons},
                              {"epsilon", config.epsilon},
                              {"beta", config.beta},
                              {"trials", config.trials},
                              {"seed", config.seed},
                              {"workers", config.workers}});
  }
  CounterBenchResult result;
  std::vector<double> log_t, log_err;
  for (const std::int64_t horizon : config.horizons) {
    const auto errors = counter_max_errors(
        horizon, config.epsilon, config.trials,
        RandomSource::derived(config.seed,
                              static_cast<std::uint64_t>(horizon))
            .next_u64(),
        config.workers);
    CounterBenchPoint point;
    point.horizon = horizon;
    point.median_max_error = quantile(errors, 0.5);
    point.p95_max_error = quantile(errors, 0.95);
    point.max_max_error = *std::max_element(errors.begin(), errors.end());
    result.points.push_back(point);
    if (writer) {
      writer->write_record(json{{"record", "counter_bench"},
                                {"horizon", horizon},
                                {"median_max_error", point.median_max_error},
                                {"p95_max_error", point.p95_max_error},
                                {"max_max_error", point.max_max_error}});
      writer->add_metric_point("max_error_median",
                               static_cast<double>(horizon),
                               point.median_max_error);
    }
    if (point.median_max_error > 0) {
      log_t.push_back(std::log(static_cast<double>(horizon)));
      log_err.push_back(std::log(point.median_max_error));
    }
  }
  if (log_t.size() >= 2) {
    result.loglog_slope = least_squares(log_t, log_err).slope;
  }
  if (writer) {
    writer->write_record(
        json{{"record", "slope"}, {"loglog_slope", result.loglog_slope}});
  }
  return result;
}

// ---------------------------------------------------------------------------

std::pair<std::int32_t, std::int64_t> pop_experiment_params(
    const PopExperimentConfig& config, int d) {
  const std::int32_t k = config.k_override.value_or(next_odd_at_least(
      config.exp_c_k * static_cast<double>(d) /
      (config.epsilon * config.epsilon)));
  const std::int64_t r = config.r_override.value_or(
      static_cast<std::int64_t>(std::ceil(
          config.exp_c_r * (static_cast<double>(d) * k +
                            std::log(1.0 / config.beta)))));
  return {k, r};
}

namespace {

struct PopTrialRun {
  PopTrialResult result;
  std::vector<PopRoundRecord> log;
};

PopTrialRun run_pop_trial_impl(const PopExperimentConfig& config,
                               std::uint64_t trial_index, bool keep_log) {
  auto cls = std::make_shared<const HypothesisClass>(
      HypothesisClass::thresholds(config.domain_n));
  auto cache = std::make_shared<LdimCache>(cls);
  const int d = cache->ldim_full();
  const auto [k, r] = pop_experiment_params(config, d);

  RandomSource trial_rng =
      RandomSource::derived(config.seed, 2 * trial_index);
  const auto h = static_cast<std::int32_t>(
      trial_rng.uniform_int(static_cast<std::uint64_t>(cls->size())));
  auto stream = make_realizable_stream(cls, h, config.horizon, config.style,
                                       trial_rng);

  PopConfig pop_config;
  pop_config.k = k;
  pop_config.r = r;
  pop_config.budget =
      PrivacyBudget{config.epsilon, config.delta, config.beta, config.horizon};
  pop_config.constants.c_gamma = config.c_gamma;
  pop_config.constants.c_lambda = config.c_lambda;

  std::vector<std::unique_ptr<OnlineLearner>> experts;
  experts.reserve(static_cast<std::size_t>(k));
  for (std::int32_t j = 0; j < k; ++j) {
    experts.push_back(std::make_unique<SoaLearner>(cls, cache));
  }
  Pop pop(pop_config, std::move(experts),
          RandomSource::derived(config.seed, 2 * trial_index + 1));

  for (const auto& e : stream) {
    const auto prediction = pop.round(e.x);
    if (!prediction) break;
    pop.feed_label(e.y);
  }

  PopTrialRun run;
  run.result.trial = trial_index;
  run.result.mistakes = pop.mistakes();
  run.result.rounds = pop.rounds();
  run.result.cause = pop.halt_cause();
  run.result.completed = !pop.halted();
  run.result.h_index = h;
  if (keep_log) run.log = pop.log();
  return run;
}

}  // namespace

PopTrialResult run_pop_trial(const PopExperimentConfig& config,
                             std::uint64_t trial_index) {
  return run_pop_trial_impl(config, trial_index, false).result;
}

namespace {

json pop_config_json(const PopExperimentConfig& config, std::int32_t k,
                     std::int64_t r, int d) {
  return json{{"domain_n", config.domain_n},
              {"d", d},
              {"epsilon", config.epsilon},
              {"delta", config.delta},
              {"beta", config.beta},
              {"horizon", config.horizon},
              {"k", k},
              {"r", r},
              {"exp_c_k", config.exp_c_k},
              {"exp_c_r", config.exp_c_r},
              {"c_gamma", config.c_gamma},
              {"c_lambda", config.c_lambda},
              {"style", config.style == StreamStyle::kMistakeForcing
                            ? "mistake-forcing"
                            : (config.style == StreamStyle::kUniform
                                   ? "uniform"
                                   : "round-robin")},
              {"trials", config.trials},
              {"seed", config.seed},
              {"workers", config.workers}};
}

}  // namespace

PopExperimentSummary run_pop_experiment(const PopExperimentConfig& config,
                                        ResultWriter* writer) {
  auto cls = std::make_shared<const HypothesisClass>(
      HypothesisClass::thresholds(config.domain_n));
  LdimCache cache(cls);
  const int d = cache.ldim_full();
  const auto [k, r] = pop_experiment_params(config, d);
  if (writer) {
    writer->write_header("pop-experiment", pop_config_json(config, k, r, d));
  }

  PopExperimentSummary summary;
  summary.k = k;
  summary.r = r;
  summary.d = d;
  summary.trials.resize(static_cast<std::size_t>(config.trials));
  parallel_chunks(config.trials, config.workers,
                  [&](std::int64_t begin, std::int64_t end) {
                    for (std::int64_t t = begin; t < end; ++t) {
                      summary.trials[static_cast<std::size_t>(t)] =
                          run_pop_trial(config, static_cast<std::uint64_t>(t));
                    }
                  });

  std::vector<double> mistakes;
  mistakes.reserve(summary.trials.size());
  std::int64_t completed = 0;
  for (const auto& trial : summary.trials) {
    mistakes.push_back(static_cast<double>(trial.mistakes));
    completed += trial.completed ? 1 : 0;
    if (writer) {
      writer->write_record(json{{"record", "pop_trial"},
                                {"trial", trial.trial},
                                {"mistakes", trial.mistakes},
                                {"rounds", trial.rounds},
                                {"cause", halt_cause_name(trial.cause)},
                                {"completed", trial.completed},
                                {"h_index", trial.h_index}});
      writer->add_metric_point("mistakes", static_cast<double>(trial.trial),
                               static_cast<double>(trial.mistakes));
    }
  }
  summary.completed_fraction =
      static_cast<double>(completed) /
      static_cast<double>(std::max(config.trials, 1));
  summary.mistakes_median = quantile(mistakes, 0.5);
  summary.mistakes_p95 = quantile(mistakes, 0.95);
  summary.mistakes_max = *std::max_element(mistakes.begin(), mistakes.end());
  if (writer) {
    writer->write_record(json{{"record", "summary"},
                              {"completed_fraction",
                               summary.completed_fraction},
                              {"mistakes_median", summary.mistakes_median},
                              {"mistakes_p95", summary.mistakes_p95},
                              {"mistakes_max", summary.mistakes_max}});
  }
  return summary;
}

PopTrialResult run_pop_single(const PopExperimentConfig& config,
                              std::uint64_t trial_index,
                              ResultWriter* writer) {
  auto cls = std::make_shared<const HypothesisClass>(
      HypothesisClass::thresholds(config.domain_n));
  LdimCache cache(cls);
  const int d = cache.ldim_full();
  const auto [k, r] = pop_experiment_params(config, d);
  if (writer) {
    json cfg = pop_config_json(config, k, r, d);
    cfg["trial"] = trial_index;
    writer->write_header("pop-run", cfg);
  }
  PopTrialRun run = run_pop_trial_impl(config, trial_index, true);
  if (writer) {
    for (const auto& rec : run.log) {
      writer->write_record(json{{"record", "round"},
                                {"i", rec.i},
                                {"x", rec.x},
                                {"y_hat", rec.y_hat},
                                {"y", rec.y},
                                {"sigma", rec.sigma},
                                {"ell", rec.ell},
                                {"votes", rec.votes},
                                {"mistake", rec.mistake}});
    }
    writer->write_record(json{{"record", "summary"},
                              {"mistakes", run.result.mistakes},
                              {"rounds", run.result.rounds},
                              {"cause", halt_cause_name(run.result.cause)},
                              {"completed", run.result.completed},
                              {"h_index", run.result.h_index}});
  }
  return run.result;
}

std::vector<PopSweepArm> run_pop_sweep(const PopExperimentConfig& base,
                                       const std::vector<std::int32_t>& n_list,
                                       const std::vector<double>& eps_list,
                                       ResultWriter* writer) {
  if (n_list.empty() || eps_list.empty()) {
    throw ParameterError("pop-sweep: empty arm lists");
  }
  if (writer) {
    json cfg = pop_config_json(base, 0, 0, 0);
    cfg.erase("k");
    cfg.erase("r");
    cfg.erase("d");
    cfg["n_list"] = n_list;
    cfg["eps_list"] = eps_list;
    writer->write_header("pop-sweep", cfg);
  }
  std::vector<PopSweepArm> arms;
  for (const std::int32_t n : n_list) {
    for (const double eps : eps_list) {
      PopExperimentConfig config = base;
      config.domain_n = n;
      config.epsilon = eps;
      // Distinct seed stream per arm.
      config.seed = RandomSource::derived(
                        base.seed, static_cast<std::uint64_t>(n) * 1000 +
                                       static_cast<std::uint64_t>(eps * 100))
                        .next_u64();
      PopSweepArm arm;
      arm.domain_n = n;
      arm.epsilon = eps;
      arm.summary = run_pop_experiment(config, nullptr);
      if (writer) {
        writer->write_record(
            json{{"record", "sweep_arm"},
                 {"domain_n", n},
                 {"d", arm.summary.d},
                 {"epsilon", eps},
                 {"k", arm.summary.k},
                 {"r", arm.summary.r},
                 {"mistakes_median", arm.summary.mistakes_median},
                 {"completed_fraction", arm.summary.completed_fraction}});
        writer->add_metric_point(
            "median_mistakes_vs_d_eps" + std::to_string(eps),
            static_cast<double>(arm.summary.d), arm.summary.mistakes_median);
      }
      arms.push_back(std::move(arm));
    }
  }
  return arms;
}

// ---------------------------------------------------------------------------

std::unique_ptr<CoinStrategy> make_coin_strategy(const std::string& name) {
  if (name == "greedy") return std::make_unique<GreedyCoinStrategy>();
  if (name == "pulse") return std::make_unique<PulseCoinStrategy>();
  if (name == "ramp") return std::make_unique<RampCoinStrategy>();
  throw ParameterError("unknown coin strategy '" + name + "'");
}

CoinTailResult run_coin_tail(const CoinTailConfig& config,
                             ResultWriter* writer) {
  if (config.runs < 1) throw ParameterError("coin-game: runs must be >= 1");
  if (writer) {
    writer->write_header("coin-game", json{{"strategy", config.strategy},
                                           {"budget", config.budget},
                                           {"rounds", config.rounds},
                                           {"runs", config.runs},
                                           {"lambdas", config.lambdas},
                                           {"seed", config.seed},
                                           {"workers", config.workers}});
  }
  std::vector<std::int64_t> rewards(static_cast<std::size_t>(config.runs));
  parallel_chunks(config.runs, config.workers,
                  [&](std::int64_t begin, std::int64_t end) {
                    for (std::int64_t i = begin; i < end; ++i) {
                      auto strategy = make_coin_strategy(config.strategy);
                      RandomSource src = RandomSource::derived(
                          config.seed, static_cast<std::uint64_t>(i));
                      rewards[static_cast<std::size_t>(i)] = run_coin_game(
                          *strategy, config.budget, config.rounds, src);
                    }
                  });
  CoinTailResult result;
  result.max_reward = *std::max_element(rewards.begin(), rewards.end());
  result.all_ok = true;
  for (const double lambda : config.lambdas) {
    std::int64_t above = 0;
    for (const auto v : rewards) above += v > lambda ? 1 : 0;
    CoinTailPoint point;
    point.lambda = lambda;
    point.empirical =
        static_cast<double>(above) / static_cast<double>(config.runs);
    point.bound = coin_game_tail_bound(lambda, config.budget);
    point.stderr_est = std::sqrt(
        std::max(point.empirical, 1.0 / static_cast<double>(config.runs)) /
        static_cast<double>(config.runs));
    point.ok = point.empirical <= point.bound + 3.0 * point.stderr_est;
    result.all_ok = result.all_ok && point.ok;
    result.points.push_back(point);
    if (writer) {
      writer->write_record(json{{"record", "tail"},
                                {"lambda", lambda},
                                {"empirical", point.empirical},
                                {"bound", point.bound},
                                {"stderr", point.stderr_est},
                                {"ok", point.ok}});
      writer->add_metric_point("tail", lambda, point.empirical);
    }
  }
  if (writer) {
    writer->write_record(json{{"record", "summary"},
                              {"max_reward", result.max_reward},
                              {"all_ok", result.all_ok}});
  }
  return result;
}

// ---------------------------------------------------------------------------

namespace {

GameRunner make_rr_runner(double epsilon, bool leak) {
  return [epsilon, leak](int b, std::uint64_t seed) {
    DelayedResponseMechanism mech(epsilon, RandomSource(seed), leak);
    ScriptedAdversary adv(make_replay_probe_script(
        2, 1, LabeledExample{0, 0}, LabeledExample{1, 0},
        LabeledExample{0, 0}));
    return run_online_game(mech, adv, 2, 1, b);
  };
}

ChallengeAtParams audit_cat_params(const AuditFixtureConfig& config,
                                   std::int64_t horizon) {
  ChallengeAtParams params;
  params.epsilon = config.epsilon;
  params.delta = config.delta;
  params.threshold = 0.0;
  params.target_reports = 8;
  params.horizon = horizon;
  params.beta = 0.05;
  params.sensitivity = 1.0;
  return params;
}

GameRunner make_cat_runner(const AuditFixtureConfig& config) {
  const ChallengeAtParams params = audit_cat_params(config, 16);
  return [params](int b, std::uint64_t seed) {
    std::vector<CatMove> moves(16, CatMove{0, 0.0, 0.0});
    moves[3] = CatMove{1, -3.0, 3.0};
    ScriptedCatAdversary adv({0.0, 1.0}, moves);
    return run_challenge_at_game(params, adv, b, RandomSource(seed));
  };
}

GameRunner make_group_cat_runner(const AuditFixtureConfig& config, int g) {
  const ChallengeAtParams params = audit_cat_params(config, 16);
  return [params, g](int b, std::uint64_t seed) {
    std::vector<CatMove> moves(16, CatMove{0, 0.0, 0.0});
    moves[2] = CatMove{1, -3.0, 3.0};
    if (g >= 2) moves[8] = CatMove{1, 3.0, -3.0};
    ScriptedCatAdversary adv({0.0, 1.0}, moves);
    return run_challenge_at_game(params, adv, b, RandomSource(seed), g);
  };
}

GameRunner make_pop_game_runner(const AuditFixtureConfig& config) {
  return [config](int b, std::uint64_t seed) {
    auto cls = std::make_shared<const HypothesisClass>(
        HypothesisClass::thresholds(8));
    PopConfig pop_config;
    pop_config.k = 5;
    pop_config.r = 8;
    pop_config.budget =
        PrivacyBudget{config.epsilon, config.delta, 0.05, 16};
    std::vector<std::unique_ptr<OnlineLearner>> experts;
    for (int j = 0; j < 5; ++j) {
      experts.push_back(std::make_unique<RestartingSoaLearner>(cls));
    }
    Pop pop(pop_config, std::move(experts), RandomSource(seed));
    ScriptedAdversary adv(make_replay_probe_script(
        16, 2, LabeledExample{0, 0}, LabeledExample{7, 1},
        LabeledExample{3, 1}));
    return run_online_game(pop, adv, 16, 1, b);
  };
}

GameRunner make_composition_runner(const AuditFixtureConfig& config) {
  const double epsilon = config.epsilon;
  const std::int64_t m = config.composition_m;
  return [epsilon, m](int b, std::uint64_t seed) {
    GameTranscript view;
    for (std::int64_t ell = 0; ell < m; ++ell) {
      DelayedResponseMechanism mech(
          epsilon,
          RandomSource::derived(seed, static_cast<std::uint64_t>(ell)));
      ScriptedAdversary adv(make_replay_probe_script(
          2, 1, LabeledExample{0, 0}, LabeledExample{1, 0},
          LabeledExample{0, 0}));
      const GameTranscript t = run_online_game(mech, adv, 2, 1, b);
      view.released.insert(view.released.end(), t.released.begin(),
                           t.released.end());
    }
    return view;
  };
}

}  // namespace

AuditReport run_audit_fixture(const AuditFixtureConfig& config,
                              ResultWriter* writer) {
  AuditParams params;
  params.trials = config.trials;
  params.prefix_len = config.prefix_len;
  params.confidence = config.confidence;
  params.workers = config.workers;
  params.master_seed = config.seed;

  AuditReport report;
  if (config.fixture == "rr") {
    report = audit_epsilon("rr", make_rr_runner(config.epsilon, false), params,
                           config.c_priv * config.epsilon + config.slack);
  } else if (config.fixture == "leak") {
    report = audit_epsilon("leak", make_rr_runner(config.epsilon, true),
                           params, 2.0 * config.epsilon);
  } else if (config.fixture == "cat") {
    params.delta = config.delta;
    report = audit_epsilon("cat-game", make_cat_runner(config), params,
                           config.c_priv * config.epsilon + config.slack);
  } else if (config.fixture == "pop") {
    params.delta = config.delta;
    report = audit_epsilon("pop-game", make_pop_game_runner(config), params,
                           config.c_priv * config.epsilon + config.slack);
  } else if (config.fixture == "group") {
    report = group_privacy_check(
        "cat-game", make_group_cat_runner(config, config.group_g),
        config.group_g, config.epsilon, config.delta, params, config.c_priv,
        config.slack);
  } else if (config.fixture == "composition") {
    report = audit_epsilon(
        "composition", make_composition_runner(config), params,
        composition_epsilon(config.composition_m, config.epsilon, 1e-6) +
            config.slack);
  } else {
    throw ParameterError("unknown audit fixture '" + config.fixture + "'");
  }

  if (writer) {
    writer->write_header("audit", json{{"fixture", config.fixture},
                                       {"epsilon", config.epsilon},
                                       {"delta", config.delta},
                                       {"trials", config.trials},
                                       {"prefix_len", config.prefix_len},
                                       {"confidence", config.confidence},
                                       {"c_priv", config.c_priv},
                                       {"slack", config.slack},
                                       {"group_g", config.group_g},
                                       {"composition_m", config.composition_m},
                                       {"seed", config.seed},
                                       {"workers", config.workers}});
    for (const auto& event : report.events) {
      writer->write_record(json{{"record", "event"},
                                {"outcome", event.outcome},
                                {"count0", event.count0},
                                {"count1", event.count1}});
    }
    writer->write_record(json{{"record", "verdict"},
                              {"game_id", report.game_id},
                              {"trials", report.trials},
                              {"prefix_len", report.prefix_len},
                              {"point_estimate", report.point_estimate},
                              {"lower_bound", report.lower_bound},
                              {"target", report.target},
                              {"pass", report.pass}});
  }
  return report;
}

// ---------------------------------------------------------------------------

AgnosticExperimentResult run_agnostic_experiment(
    const AgnosticExperimentConfig& config, ResultWriter* writer) {
  auto cls = std::make_shared<const HypothesisClass>(
      HypothesisClass::thresholds(config.domain_n));
  const int d = ldim(*cls);
  if (writer) {
    writer->write_header(
        "agnostic",
        json{{"domain_n", config.domain_n},
             {"d", d},
             {"epsilon", config.epsilon},
             {"delta", config.delta},
             {"beta", config.beta},
             {"horizon", config.horizon},
             {"corruption_grid", config.corruption_grid},
             {"trials", config.trials},
             {"agn_c_k", config.constants.c_k},
             {"agn_c_u", config.constants.c_u},
             {"c_gamma", config.constants.c_gamma},
             {"c_lambda", config.constants.c_lambda},
             {"m_star_mult", config.constants.m_star_mult},
             {"seed", config.seed},
             {"workers", config.workers}});
  }
  const PrivacyBudget budget{config.epsilon, config.delta, config.beta,
                             config.horizon};
  AgnosticExperimentResult result;
  result.d = d;
  for (std::size_t arm_index = 0; arm_index < config.corruption_grid.size();
       ++arm_index) {
    const std::int64_t corruption = config.corruption_grid[arm_index];
    std::vector<double> mistakes(static_cast<std::size_t>(config.trials));
    std::vector<double> phases(static_cast<std::size_t>(config.trials));
    std::vector<double> opts(static_cast<std::size_t>(config.trials));
    parallel_chunks(
        config.trials, config.workers,
        [&](std::int64_t begin, std::int64_t end) {
          for (std::int64_t t = begin; t < end; ++t) {
            const std::uint64_t base = static_cast<std::uint64_t>(arm_index) *
                                           1000000ULL +
                                       static_cast<std::uint64_t>(t);
            RandomSource rng = RandomSource::derived(config.seed, base);
            const auto h = static_cast<std::int32_t>(
                rng.uniform_int(static_cast<std::uint64_t>(cls->size())));
            auto stream = make_realizable_stream(
                cls, h, config.horizon, StreamStyle::kUniform, rng);
            // Flip `corruption` distinct random positions (partial
            // Fisher-Yates over an index array keeps the stream order).
            std::vector<std::size_t> order(stream.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            for (std::int64_t i = 0; i < corruption; ++i) {
              const auto pick =
                  static_cast<std::size_t>(i) +
                  static_cast<std::size_t>(rng.uniform_int(
                      order.size() - static_cast<std::size_t>(i)));
              std::swap(order[static_cast<std::size_t>(i)], order[pick]);
              auto& e = stream[order[static_cast<std::size_t>(i)]];
              e.y = 1 - e.y;
            }
            const auto run = agnostic_pop_run(cls, stream, budget,
                                              config.constants,
                                              rng.next_u64());
            mistakes[static_cast<std::size_t>(t)] =
                static_cast<double>(run.total_mistakes);
            phases[static_cast<std::size_t>(t)] =
                static_cast<double>(run.phases.size());
            opts[static_cast<std::size_t>(t)] =
                static_cast<double>(stream_opt(*cls, stream));
          }
        });
    AgnosticArmResult arm;
    arm.corruption = corruption;
    arm.mistakes_median = quantile(mistakes, 0.5);
    arm.phases_median = quantile(phases, 0.5);
    arm.phases_max = *std::max_element(phases.begin(), phases.end());
    arm.opt_median = quantile(opts, 0.5);
    result.arms.push_back(arm);
    if (writer) {
      writer->write_record(json{{"record", "agnostic_arm"},
                                {"corruption", corruption},
                                {"mistakes_median", arm.mistakes_median},
                                {"phases_median", arm.phases_median},
                                {"phases_max", arm.phases_max},
                                {"opt_median", arm.opt_median}});
      writer->add_metric_point("mistakes_vs_corruption",
                               static_cast<double>(corruption),
                               arm.mistakes_median);
    }
  }
  return result;
}

}  // namespace cdp
