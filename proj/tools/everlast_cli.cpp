// Copyright 2026 The Everlast Authors
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
// Experiment CLI. Subcommands: predict, privacy-game, bt-suite,
// labelboost-suite, reduction-suite, preflight. Every run writes
// results.csv and summary.json into the output directory; all randomness
// derives from the resolved seed, so identical invocations produce
// byte-identical outputs.

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "everlast/between_thresholds.hpp"
#include "everlast/harness.hpp"
#include "everlast/label_boost.hpp"
#include "everlast/predictor.hpp"
#include "everlast/reduction.hpp"
#include "everlast/serialization.hpp"

namespace {

constexpr int kCsvSchemaVersion = 1;

using nlohmann::json;

struct CommonOptions {
  std::string config_path;
  std::string output_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<std::string> mode;
  std::optional<std::string> adversary;
  std::optional<int> rounds;
};

json load_config(const CommonOptions& options) {
  if (options.config_path.empty()) return json::object();
  std::ifstream in(options.config_path);
  if (!in) throw std::invalid_argument("config file not found: " + options.config_path);
  json j;
  in >> j;
  return j;
}

// Flags win over config fields.
std::uint64_t resolve_seed(const json& config, const CommonOptions& options) {
  if (options.seed) return *options.seed;
  return config.value("seed", std::uint64_t{1});
}

int resolve_trials(const json& config, const CommonOptions& options, int fallback) {
  if (options.trials) return *options.trials;
  return config.value("trials", fallback);
}

everlast::PredictorConfig resolve_predictor(const json& config, const CommonOptions& options) {
  everlast::PredictorConfig predictor;
  if (config.contains("predictor")) {
    json p = config.at("predictor");
    if (options.mode) p["mode"] = *options.mode;
    predictor = everlast::predictor_config_from_json(p);
  } else {
    // Frozen scaled baseline: three desk-scale phases over thresholds.
    predictor.mode = everlast::PredictorMode::kScaled;
    predictor.alpha = 0.5;
    predictor.beta = 0.5;
    predictor.epsilon = 1.0;
    predictor.delta = 0.0625;
    predictor.tau = 2e-8;
    predictor.query_multiplier = 5.0;
    predictor.top_budget_multiplier = 64.0;
    predictor.subsample_denominator = 2.0;
    predictor.concept_class = everlast::ConceptClass::threshold(1024);
    if (options.mode && *options.mode == "paper-exact") {
      throw std::invalid_argument("paper-exact mode needs an explicit --config");
    }
    predictor.validate();
  }
  return predictor;
}

void write_outputs(const std::string& output_dir, const std::string& csv, json summary) {
  std::filesystem::create_directories(output_dir);
  {
    std::ofstream out(output_dir + "/results.csv", std::ios::binary);
    out << csv;
  }
  summary["csv_schema_version"] = kCsvSchemaVersion;
  {
    std::ofstream out(output_dir + "/summary.json", std::ios::binary);
    out << summary.dump(2) << '\n';
  }
}

std::string fmt(double v) { return everlast::format_double(v); }

int run_predict(const json& config, const CommonOptions& options) {
  everlast::AccuracyExperiment experiment;
  experiment.predictor = resolve_predictor(config, options);
  const std::int64_t domain = experiment.predictor.concept_class.domain().size;
  experiment.dist = config.contains("distribution")
                        ? everlast::distribution_from_json(config.at("distribution"))
                        : everlast::Distribution::uniform(domain);
  experiment.target = config.contains("target")
                          ? everlast::hypothesis_from_json(config.at("target"))
                          : everlast::Hypothesis::threshold(domain, domain / 2);
  experiment.training_size = config.value("training_size", std::int64_t{0});
  experiment.stream_length = config.value("stream_length", std::int64_t{0});
  experiment.phase_horizon = config.value("phase_horizon", 3);
  experiment.trials = resolve_trials(config, options, 20);
  experiment.seed = resolve_seed(config, options);

  everlast::AccuracyReport report =
      everlast::run_accuracy_experiment(experiment, everlast::worker_count_from_env());

  std::ostringstream csv;
  everlast::CsvWriter writer(csv, {"trial", "phases_completed", "failed", "failure_round",
                                   "queries", "mistakes", "mistake_rate", "pools_exact",
                                   "realizable", "halving_exact", "final_ensemble_error"});
  for (const auto& trial : report.trials) {
    bool pools = true;
    bool realizable = true;
    bool halving = true;
    double ensemble_error = 0.0;
    for (const auto& check : trial.phase_checks) {
      pools = pools && check.pool_exact;
      realizable = realizable && check.realizable;
      halving = halving && check.halving_exact;
      ensemble_error = check.ensemble_error;
    }
    writer.row({std::to_string(trial.trial), std::to_string(trial.phases_completed),
                std::to_string(trial.failed ? 1 : 0), std::to_string(trial.failure_round),
                std::to_string(trial.queries), std::to_string(trial.mistakes),
                fmt(trial.mistake_rate), std::to_string(pools ? 1 : 0),
                std::to_string(realizable ? 1 : 0), std::to_string(halving ? 1 : 0),
                fmt(ensemble_error)});
  }

  // Query-by-query transcript of trial 0, re-run on the same derived seed.
  {
    std::filesystem::create_directories(options.output_dir);
    everlast::Rng rng(everlast::derive_seed(experiment.seed, 0));
    everlast::Rng data_rng = rng.split();
    everlast::Dataset training;
    std::int64_t n = experiment.training_size > 0
                         ? experiment.training_size
                         : everlast::required_training_size(experiment.predictor);
    for (std::int64_t i = 0; i < n; ++i) {
      std::int64_t x = experiment.dist.sample(data_rng);
      training.push_back({x, experiment.target.eval(x) ? 1 : 0});
    }
    everlast::Rng predictor_rng = rng.split();
    everlast::Predictor predictor(training, experiment.predictor, predictor_rng);
    everlast::Rng query_rng = rng.split();
    std::ofstream transcript(options.output_dir + "/transcript.csv", std::ios::binary);
    everlast::CsvWriter tw(transcript, {"ordinal", "phase", "query_point", "bt_answer", "label"});
    const std::int64_t limit = std::min<std::int64_t>(report.stream_length, 2000);
    for (std::int64_t i = 0; i < limit; ++i) {
      std::int64_t x = experiment.dist.sample(query_rng);
      try {
        everlast::Prediction p = predictor.predict(x);
        tw.row({std::to_string(p.ordinal), std::to_string(p.phase), std::to_string(x),
                std::string(1, everlast::bt_answer_char(p.answer)), std::to_string(p.label)});
      } catch (const everlast::PredictorFailure&) {
        break;
      }
    }
  }

  json summary;
  summary["experiment"] = "predict";
  summary["seed"] = experiment.seed;
  summary["trials"] = experiment.trials;
  summary["predictor"] = everlast::to_json(experiment.predictor);
  summary["distribution"] = everlast::to_json(experiment.dist);
  summary["target"] = everlast::to_json(experiment.target);
  summary["phase_horizon"] = experiment.phase_horizon;
  summary["report"] = everlast::to_json(report);
  write_outputs(options.output_dir, csv.str(), summary);

  for (const auto& trial : report.trials) {
    if (trial.failed) return 1;
  }
  return 0;
}

int run_privacy_game(const json& config, const CommonOptions& options) {
  everlast::PredictorConfig predictor = resolve_predictor(config, options);
  json game = config.value("game", json::object());
  std::string adversary_name =
      options.adversary.value_or(game.value("adversary", std::string("one-diff-training")));

  everlast::AdversaryParams params;
  params.domain_size = predictor.concept_class.domain().size;
  params.target = everlast::Hypothesis::threshold(params.domain_size, params.domain_size / 2);
  params.diff_round = game.value("diff_round", 1);

  everlast::SmokeTestConfig smoke;
  smoke.training_size = everlast::required_training_size(predictor);
  smoke.rounds = options.rounds.value_or(game.value("rounds", 4));
  smoke.trials = resolve_trials(config, options, 500);
  smoke.epsilon = game.value("epsilon", predictor.epsilon);
  smoke.delta = game.value("delta", predictor.delta);
  smoke.seed = resolve_seed(config, options);

  everlast::SmokeTestReport report = everlast::transcript_smoke_test(
      everlast::make_adversary_factory(adversary_name, params),
      everlast::predictor_system_factory(predictor), smoke);

  std::ostringstream csv;
  everlast::CsvWriter writer(csv, {"metric", "value"});
  writer.row({"support", std::to_string(report.support)});
  writer.row({"required_delta", fmt(report.required_delta)});
  writer.row({"slack", fmt(report.slack)});
  writer.row({"flagged", std::to_string(report.flagged ? 1 : 0)});
  writer.row({"sparse_support", std::to_string(report.sparse_support ? 1 : 0)});

  json summary;
  summary["experiment"] = "privacy-game";
  summary["seed"] = smoke.seed;
  summary["trials"] = smoke.trials;
  summary["rounds"] = smoke.rounds;
  summary["adversary"] = adversary_name;
  summary["epsilon"] = smoke.epsilon;
  summary["delta"] = smoke.delta;
  summary["predictor"] = everlast::to_json(predictor);
  summary["report"] = everlast::to_json(report);
  write_outputs(options.output_dir, csv.str(), summary);
  return 0;
}

int run_bt_suite(const json& config, const CommonOptions& options) {
  json bt = config.value("bt", json::object());
  const double alpha = bt.value("alpha", 0.1);
  const double beta = bt.value("beta", 0.05);
  const double epsilon = bt.value("epsilon", 1.0);
  const std::int64_t queries = bt.value("queries", std::int64_t{100});
  std::int64_t n = bt.value("database_size", std::int64_t{0});
  if (n == 0) n = everlast::bt_min_n(alpha, beta, epsilon, queries);
  const double t_lower = bt.value("lower_threshold", 0.45);
  const double t_upper = bt.value("upper_threshold", 0.55);
  const int trials = resolve_trials(config, options, 2000);
  const std::uint64_t seed = resolve_seed(config, options);

  std::vector<std::array<std::int64_t, 4>> rows(static_cast<std::size_t>(trials));
  everlast::parallel_trials(trials, everlast::worker_count_from_env(), [&](int trial) {
    everlast::Rng rng(everlast::derive_seed(seed, static_cast<std::uint64_t>(trial)));
    everlast::BtConfig cfg;
    cfg.database_size = n;
    cfg.epsilon = epsilon;
    cfg.delta = 1e-9;
    cfg.lower_threshold = t_lower;
    cfg.upper_threshold = t_upper;
    cfg.top_budget = 1;
    cfg.enforce_min_gap = false;  // accuracy experiment, not a privacy run
    everlast::BetweenThresholds mechanism(cfg, rng.split());

    everlast::Rng query_rng = rng.split();
    double probe = 0.5;
    std::int64_t violations = 0;
    std::int64_t answered = 0;
    std::int64_t tops = 0;
    for (std::int64_t j = 0; j < queries && !mechanism.halted(); ++j) {
      // Adaptive stress: walk the query toward the gap using past answers.
      double q = std::min(1.0, std::max(0.0, probe + 0.02 * (query_rng.next_uniform() - 0.5)));
      everlast::BtAnswer answer = mechanism.query(q);
      ++answered;
      if (answer == everlast::BtAnswer::kLeft) {
        if (q > t_lower + alpha) ++violations;
        probe += 0.05;
      } else if (answer == everlast::BtAnswer::kRight) {
        if (q < t_upper - alpha) ++violations;
        probe -= 0.05;
      } else {
        ++tops;
        if (q < t_lower - alpha || q > t_upper + alpha) ++violations;
      }
    }
    rows[static_cast<std::size_t>(trial)] = {answered, tops, violations,
                                             mechanism.halted() ? 1 : 0};
  });

  std::ostringstream csv;
  everlast::CsvWriter writer(csv, {"trial", "answered", "tops", "violations", "halted"});
  int violating_trials = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const auto& r = rows[static_cast<std::size_t>(trial)];
    if (r[2] > 0) ++violating_trials;
    writer.row({std::to_string(trial), std::to_string(r[0]), std::to_string(r[1]),
                std::to_string(r[2]), std::to_string(r[3])});
  }

  json summary;
  summary["experiment"] = "bt-suite";
  summary["seed"] = seed;
  summary["trials"] = trials;
  summary["alpha"] = alpha;
  summary["beta"] = beta;
  summary["epsilon"] = epsilon;
  summary["queries"] = queries;
  summary["database_size"] = n;
  summary["violation_fraction"] = static_cast<double>(violating_trials) / trials;
  summary["beta_bound"] = beta;
  write_outputs(options.output_dir, csv.str(), summary);
  return 0;
}

int run_labelboost_suite(const json& config, const CommonOptions& options) {
  json lb = config.value("labelboost", json::object());
  const std::int64_t domain = lb.value("domain_size", std::int64_t{32});
  const std::int64_t s_size = lb.value("s_size", std::int64_t{200});
  const std::int64_t t_size = lb.value("t_size", std::int64_t{64});
  const double alpha = lb.value("alpha", 0.15);
  const double beta = lb.value("beta", 0.1);
  const int trials = resolve_trials(config, options, 500);
  const std::uint64_t seed = resolve_seed(config, options);

  everlast::ConceptClass cls = everlast::ConceptClass::threshold(domain);
  everlast::LabelBoostCapacity capacity =
      everlast::label_boost_capacity(s_size, alpha, beta, cls.vc_dimension());

  struct Row {
    std::int64_t mistakes = 0;
    double error = 0.0;
    bool exceeded = false;
    bool realizable = false;
    std::int64_t candidates = 0;
  };
  std::vector<Row> rows(static_cast<std::size_t>(trials));
  everlast::parallel_trials(trials, everlast::worker_count_from_env(), [&](int trial) {
    everlast::Rng rng(everlast::derive_seed(seed, static_cast<std::uint64_t>(trial)));
    auto cut = static_cast<std::int64_t>(
        everlast::uniform_below(rng, static_cast<std::uint64_t>(domain + 1)));
    everlast::Hypothesis target = everlast::Hypothesis::threshold(domain, cut);
    everlast::Distribution dist = everlast::Distribution::uniform(domain);
    everlast::Dataset labeled;
    for (std::int64_t i = 0; i < s_size; ++i) {
      std::int64_t x = dist.sample(rng);
      labeled.push_back({x, target.eval(x) ? 1 : 0});
    }
    everlast::Dataset unlabeled;
    for (std::int64_t i = 0; i < t_size; ++i) {
      unlabeled.push_back({dist.sample(rng), everlast::kUnlabeled});
    }
    everlast::LabelBoostResult result = everlast::label_boost(labeled, unlabeled, cls, rng);
    everlast::Fraction err = everlast::empirical_error(result.hypothesis, labeled);
    Row row;
    row.mistakes = err.numerator;
    row.error = err.value();
    row.exceeded = err.value() > alpha;
    row.realizable =
        everlast::empirical_error(result.hypothesis, result.relabeled).numerator == 0;
    row.candidates = result.hypothesis_count;
    rows[static_cast<std::size_t>(trial)] = row;
  });

  std::ostringstream csv;
  everlast::CsvWriter writer(csv, {"trial", "mistakes_on_s", "error_on_s", "exceeded_alpha",
                                   "realizable", "candidates"});
  int exceeded_count = 0;
  bool all_realizable = true;
  for (int trial = 0; trial < trials; ++trial) {
    const Row& row = rows[static_cast<std::size_t>(trial)];
    if (row.exceeded) ++exceeded_count;
    all_realizable = all_realizable && row.realizable;
    writer.row({std::to_string(trial), std::to_string(row.mistakes), fmt(row.error),
                std::to_string(row.exceeded ? 1 : 0), std::to_string(row.realizable ? 1 : 0),
                std::to_string(row.candidates)});
  }

  json summary;
  summary["experiment"] = "labelboost-suite";
  summary["seed"] = seed;
  summary["trials"] = trials;
  summary["domain_size"] = domain;
  summary["s_size"] = s_size;
  summary["t_size"] = t_size;
  summary["alpha"] = alpha;
  summary["beta"] = beta;
  summary["capacity"] = capacity.max_unlabeled;
  summary["capacity_clamped"] = capacity.clamped;
  summary["exceeded_fraction"] = static_cast<double>(exceeded_count) / trials;
  summary["all_realizable"] = all_realizable;
  write_outputs(options.output_dir, csv.str(), summary);
  return 0;
}

int run_reduction_suite(const json& config, const CommonOptions& options) {
  json red = config.value("reduction", json::object());
  const std::int64_t domain_size = red.value("domain_size", std::int64_t{8});
  const double beta = red.value("beta", 0.125);
  const double alpha = red.value("alpha", 0.0625);
  const int boost_trials = red.value("boost_trials", 25);
  const int trials = resolve_trials(config, options, 2000);
  const std::uint64_t seed = resolve_seed(config, options);

  const everlast::Domain domain{domain_size};
  const everlast::Hypothesis target =
      everlast::Hypothesis::threshold(domain_size, domain_size / 2);

  // Part A: extraction failure frequency.
  std::vector<int> failures(static_cast<std::size_t>(trials));
  everlast::parallel_trials(trials, everlast::worker_count_from_env(), [&](int trial) {
    everlast::Rng rng(everlast::derive_seed(seed, static_cast<std::uint64_t>(trial)));
    everlast::ScriptedStream stream({target});
    everlast::LearnerOutcome outcome = everlast::hypothesis_learner(stream, domain, beta, rng);
    failures[static_cast<std::size_t>(trial)] = outcome.failed ? 1 : 0;
  });

  // Part B: majority boost on streams where at least 7/8 of the extractions
  // are 8*alpha-good.
  const std::int64_t boost_rounds = everlast::accuracy_boost_rounds(beta);
  const everlast::Distribution dist = everlast::Distribution::uniform(domain_size);
  std::vector<double> boost_errors(static_cast<std::size_t>(boost_trials));
  everlast::parallel_trials(boost_trials, everlast::worker_count_from_env(), [&](int trial) {
    everlast::Rng rng(
        everlast::derive_seed(seed ^ 0x5a5a5a5aULL, static_cast<std::uint64_t>(trial)));
    std::vector<bool> complement_table;
    for (std::int64_t x = 0; x < domain_size; ++x) complement_table.push_back(!target.eval(x));
    everlast::Hypothesis bad = everlast::Hypothesis::table(complement_table);

    const std::int64_t bad_count = boost_rounds / 8;
    std::vector<int> is_bad(static_cast<std::size_t>(boost_rounds), 0);
    for (std::int64_t i = 0; i < bad_count; ++i) is_bad[static_cast<std::size_t>(i)] = 1;
    for (std::size_t i = is_bad.size(); i > 1; --i) {
      std::swap(is_bad[i - 1], is_bad[everlast::uniform_below(rng, i)]);
    }
    std::size_t cursor = 0;
    auto factory = [&](const everlast::Dataset&, everlast::Rng) {
      bool use_bad = is_bad[cursor++ % is_bad.size()] == 1;
      return std::make_unique<everlast::ScriptedStream>(
          std::vector<everlast::Hypothesis>{use_bad ? bad : target});
    };
    std::vector<everlast::Dataset> samples(static_cast<std::size_t>(boost_rounds));
    everlast::Hypothesis boosted =
        everlast::accuracy_boost(samples, factory, domain, beta, rng.split());
    boost_errors[static_cast<std::size_t>(trial)] = dist.disagreement_mass(boosted, target);
  });

  std::ostringstream csv;
  everlast::CsvWriter writer(csv, {"part", "trial", "failed", "boost_error", "bound"});
  int failure_count = 0;
  for (int trial = 0; trial < trials; ++trial) {
    failure_count += failures[static_cast<std::size_t>(trial)];
    writer.row({"learner-failure", std::to_string(trial),
                std::to_string(failures[static_cast<std::size_t>(trial)]), "", fmt(beta)});
  }
  bool all_boost_good = true;
  for (int trial = 0; trial < boost_trials; ++trial) {
    double err = boost_errors[static_cast<std::size_t>(trial)];
    all_boost_good = all_boost_good && err <= 24.0 * alpha;
    writer.row({"boost", std::to_string(trial), "", fmt(err), fmt(24.0 * alpha)});
  }

  json summary;
  summary["experiment"] = "reduction-suite";
  summary["seed"] = seed;
  summary["trials"] = trials;
  summary["domain_size"] = domain_size;
  summary["beta"] = beta;
  summary["alpha"] = alpha;
  summary["learner_rounds"] = everlast::hypothesis_learner_rounds(domain_size, beta);
  summary["failure_fraction"] = static_cast<double>(failure_count) / trials;
  summary["boost_rounds"] = boost_rounds;
  summary["boost_trials"] = boost_trials;
  summary["all_boost_within_24alpha"] = all_boost_good;
  write_outputs(options.output_dir, csv.str(), summary);
  return 0;
}

int run_preflight(const json& config, const CommonOptions& options) {
  everlast::PredictorConfig predictor = resolve_predictor(config, options);
  const int horizon = config.value("phase_horizon", 5);
  everlast::PreflightReport report = everlast::preflight_validate(predictor, horizon);

  std::ostringstream csv;
  everlast::CsvWriter writer(csv, {"phase", "check", "lhs", "rhs", "pass", "log_scale"});
  for (const auto& phase : report.phases) {
    for (const auto& check : phase.checks) {
      writer.row({std::to_string(phase.scalars.index), check.name, fmt(check.lhs),
                  fmt(check.rhs), std::to_string(check.pass ? 1 : 0),
                  std::to_string(check.log_scale ? 1 : 0)});
      std::cout << "phase " << phase.scalars.index << " " << check.name << ": "
                << (check.pass ? "pass" : "FAIL") << " (lhs=" << fmt(check.lhs)
                << ", rhs=" << fmt(check.rhs) << (check.log_scale ? ", log-scale" : "")
                << ")\n";
    }
  }
  for (const auto& warning : report.warnings) std::cout << warning << '\n';

  json summary;
  summary["experiment"] = "preflight";
  summary["seed"] = resolve_seed(config, options);
  summary["phase_horizon"] = horizon;
  summary["predictor"] = everlast::to_json(predictor);
  summary["report"] = everlast::to_json(report);
  write_outputs(options.output_dir, csv.str(), summary);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"private everlasting prediction experiments"};
  app.require_subcommand(1);

  CommonOptions options;
  std::uint64_t seed_flag = 0;
  int trials_flag = 0;
  std::string mode_flag;
  std::string adversary_flag;
  int rounds_flag = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", options.config_path, "JSON config file");
    cmd->add_option("--output", options.output_dir, "output directory");
    cmd->add_option("--seed", seed_flag, "master seed (overrides config)")
        ->each([&](const std::string& s) { options.seed = std::stoull(s); });
    cmd->add_option("--trials", trials_flag, "trial count (overrides config)")
        ->each([&](const std::string& s) { options.trials = std::stoi(s); });
    cmd->add_option("--mode", mode_flag, "paper-exact or scaled")
        ->each([&](const std::string& s) { options.mode = s; });
  };

  CLI::App* predict = app.add_subcommand("predict", "i.i.d. stream accuracy experiment");
  add_common(predict);
  CLI::App* game = app.add_subcommand("privacy-game", "two-world transcript audit");
  add_common(game);
  game->add_option("--adversary", adversary_flag,
                   "constant-pair | one-diff-training | one-diff-query | adaptive-flip")
      ->each([&](const std::string& s) { options.adversary = s; });
  game->add_option("--rounds", rounds_flag, "game rounds")
      ->each([&](const std::string& s) { options.rounds = std::stoi(s); });
  CLI::App* bt = app.add_subcommand("bt-suite", "threshold mechanism accuracy suite");
  add_common(bt);
  CLI::App* lb = app.add_subcommand("labelboost-suite", "relabeling utility suite");
  add_common(lb);
  CLI::App* red = app.add_subcommand("reduction-suite", "hypothesis extraction suite");
  add_common(red);
  CLI::App* pre = app.add_subcommand("preflight", "schedule-consistency checks");
  add_common(pre);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const nlohmann::json config = load_config(options);
    if (predict->parsed()) return run_predict(config, options);
    if (game->parsed()) return run_privacy_game(config, options);
    if (bt->parsed()) return run_bt_suite(config, options);
    if (lb->parsed()) return run_labelboost_suite(config, options);
    if (red->parsed()) return run_reduction_suite(config, options);
    if (pre->parsed()) return run_preflight(config, options);
  } catch (const everlast::PredictorFailure& e) {
    std::cerr << "predictor failure: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
