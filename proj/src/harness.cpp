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

#include "everlast/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace everlast {
namespace {

Dataset draw_labeled_sample(const Distribution& dist, const Hypothesis& target,
                            std::int64_t count, UniformSource& rng) {
  Dataset sample;
  sample.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    std::int64_t x = dist.sample(rng);
    sample.push_back({x, target.eval(x) ? 1 : 0});
  }
  return sample;
}

Hypothesis majority_vote(const std::vector<Hypothesis>& ensemble, std::int64_t domain_size) {
  std::vector<bool> table(static_cast<std::size_t>(domain_size));
  for (std::int64_t x = 0; x < domain_size; ++x) {
    std::int64_t ones = 0;
    for (const auto& h : ensemble) ones += h.eval(x) ? 1 : 0;
    table[static_cast<std::size_t>(x)] = 2 * ones >= static_cast<std::int64_t>(ensemble.size());
  }
  return Hypothesis::table(std::move(table));
}

}  // namespace

AccuracyReport run_accuracy_experiment(const AccuracyExperiment& experiment, int workers) {
  if (experiment.trials < 1) throw std::invalid_argument("accuracy experiment: trials >= 1");
  if (experiment.phase_horizon < 1) {
    throw std::invalid_argument("accuracy experiment: phase horizon >= 1");
  }
  experiment.predictor.validate();
  if (experiment.dist.domain_size() != experiment.predictor.concept_class.domain().size) {
    throw std::invalid_argument("accuracy experiment: distribution/domain size mismatch");
  }

  std::int64_t training_size = experiment.training_size;
  if (training_size == 0) training_size = required_training_size(experiment.predictor);

  std::int64_t stream_length = experiment.stream_length;
  if (stream_length == 0) {
    long double total = 0.0L;
    for (int i = 1; i <= experiment.phase_horizon; ++i) {
      total += phase_scalars(i, experiment.predictor).query_budget;
    }
    stream_length = static_cast<std::int64_t>(total);
  }

  AccuracyReport report;
  report.stream_length = stream_length;
  report.trials.resize(static_cast<std::size_t>(experiment.trials));

  const double alpha_bound = 6.0 * experiment.predictor.alpha;
  auto run_trial = [&](int trial) {
    Rng rng(derive_seed(experiment.seed, static_cast<std::uint64_t>(trial)));
    Rng data_rng = rng.split();
    Dataset training =
        draw_labeled_sample(experiment.dist, experiment.target, training_size, data_rng);
    Rng predictor_rng = rng.split();
    Predictor predictor(training, experiment.predictor, predictor_rng);
    Rng query_rng = rng.split();

    AccuracyTrialResult result;
    result.trial = trial;
    for (std::int64_t i = 0; i < stream_length; ++i) {
      if (predictor.phases_completed() >= experiment.phase_horizon) break;
      std::int64_t x = experiment.dist.sample(query_rng);
      try {
        Prediction p = predictor.predict(x);
        ++result.queries;
        if (p.label != (experiment.target.eval(x) ? 1 : 0)) ++result.mistakes;
      } catch (const PredictorFailure&) {
        result.failed = true;
        result.failure_round = i + 1;
        break;
      }
    }
    result.phases_completed = predictor.phases_completed();
    result.mistake_rate =
        result.queries > 0
            ? static_cast<double>(result.mistakes) / static_cast<double>(result.queries)
            : 0.0;

    const std::int64_t domain_size = experiment.predictor.concept_class.domain().size;
    for (const auto& record : predictor.phase_records()) {
      PhaseCheck check;
      check.phase = record.scalars.index;
      check.pool_expected = static_cast<std::int64_t>(record.scalars.pool_size);
      check.pool_actual = record.pool_actual;
      check.pool_exact = record.pool_exact && check.pool_actual == check.pool_expected;
      check.realizable = record.pool_realizable;
      check.halving_exact =
          record.scalars.alpha == experiment.predictor.alpha / std::exp2(check.phase) &&
          record.scalars.beta == experiment.predictor.beta / std::exp2(check.phase);
      result.phase_checks.push_back(check);
    }
    // Exact majority-vote error of the final live ensemble.
    if (!result.phase_checks.empty()) {
      result.phase_checks.back().ensemble_error = experiment.dist.disagreement_mass(
          majority_vote(predictor.ensemble(), domain_size), experiment.target);
    }
    report.trials[static_cast<std::size_t>(trial)] = std::move(result);
  };

  parallel_trials(experiment.trials, workers, run_trial);

  int completed = 0;
  int within_bound = 0;
  for (const auto& trial : report.trials) {
    if (!trial.failed && trial.phases_completed >= experiment.phase_horizon) ++completed;
    if (trial.mistake_rate <= alpha_bound) ++within_bound;
    for (const auto& check : trial.phase_checks) {
      report.all_pools_exact = report.all_pools_exact && check.pool_exact;
      report.all_realizable = report.all_realizable && check.realizable;
      report.all_halving_exact = report.all_halving_exact && check.halving_exact;
    }
  }
  report.completion_fraction =
      static_cast<double>(completed) / static_cast<double>(experiment.trials);
  report.error_within_bound_fraction =
      static_cast<double>(within_bound) / static_cast<double>(experiment.trials);
  return report;
}

namespace {

class PredictorSystem final : public PredictionSystem {
 public:
  explicit PredictorSystem(PredictorConfig config) : config_(std::move(config)) {}

  void train(const Dataset& training, Rng rng) override {
    predictor_.emplace(training, config_, rng);
  }

  int predict(std::int64_t x) override {
    if (!predictor_) throw std::logic_error("PredictorSystem: predict before train");
    return predictor_->predict(x).label;
  }

 private:
  PredictorConfig config_;
  std::optional<Predictor> predictor_;
};

// Echoes the first training label forever: the strongest possible leak of a
// single training position.
class CanarySystem final : public PredictionSystem {
 public:
  void train(const Dataset& training, Rng) override {
    if (training.empty()) throw std::invalid_argument("canary: empty training set");
    label_ = training.front().label;
  }

  int predict(std::int64_t) override { return label_; }

 private:
  int label_ = 0;
};

}  // namespace

SystemFactory predictor_system_factory(PredictorConfig config) {
  return [config]() { return std::make_unique<PredictorSystem>(config); };
}

SystemFactory canary_system_factory() {
  return []() { return std::make_unique<CanarySystem>(); };
}

namespace {

Dataset labeled_by(const Hypothesis& target, const std::vector<std::int64_t>& points) {
  Dataset out;
  out.reserve(points.size());
  for (auto x : points) out.push_back({x, target.eval(x) ? 1 : 0});
  return out;
}

std::vector<std::int64_t> random_points(std::int64_t domain_size, std::int64_t count,
                                        UniformSource& rng) {
  std::vector<std::int64_t> points(static_cast<std::size_t>(count));
  for (auto& p : points) {
    p = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(domain_size)));
  }
  return points;
}

class ConstantPairAdversary final : public Adversary {
 public:
  explicit ConstantPairAdversary(AdversaryParams params) : params_(std::move(params)) {}

  std::pair<Dataset, Dataset> choose_training(std::int64_t n, UniformSource& rng) override {
    Dataset s = labeled_by(params_.target, random_points(params_.domain_size, n, rng));
    return {s, s};
  }

  std::pair<std::int64_t, std::int64_t> choose_queries(int, const std::vector<int>&,
                                                       UniformSource& rng) override {
    auto x = static_cast<std::int64_t>(
        uniform_below(rng, static_cast<std::uint64_t>(params_.domain_size)));
    return {x, x};
  }

 private:
  AdversaryParams params_;
};

class OneDiffTrainingAdversary final : public Adversary {
 public:
  explicit OneDiffTrainingAdversary(AdversaryParams params) : params_(std::move(params)) {}

  std::pair<Dataset, Dataset> choose_training(std::int64_t n, UniformSource& rng) override {
    Dataset s0 = labeled_by(params_.target, random_points(params_.domain_size, n, rng));
    Dataset s1 = s0;
    s1.front().label = 1 - s1.front().label;
    return {s0, s1};
  }

  std::pair<std::int64_t, std::int64_t> choose_queries(int, const std::vector<int>&,
                                                       UniformSource& rng) override {
    auto x = static_cast<std::int64_t>(
        uniform_below(rng, static_cast<std::uint64_t>(params_.domain_size)));
    return {x, x};
  }

 private:
  AdversaryParams params_;
};

class OneDiffQueryAdversary final : public Adversary {
 public:
  explicit OneDiffQueryAdversary(AdversaryParams params) : params_(std::move(params)) {}

  std::pair<Dataset, Dataset> choose_training(std::int64_t n, UniformSource& rng) override {
    Dataset s = labeled_by(params_.target, random_points(params_.domain_size, n, rng));
    return {s, s};
  }

  std::pair<std::int64_t, std::int64_t> choose_queries(int round, const std::vector<int>&,
                                                       UniformSource& rng) override {
    auto x = static_cast<std::int64_t>(
        uniform_below(rng, static_cast<std::uint64_t>(params_.domain_size)));
    if (round == params_.diff_round) {
      std::int64_t y = (x + 1) % params_.domain_size;
      return {x, y};
    }
    return {x, x};
  }

 private:
  AdversaryParams params_;
};

// Picks the next query as a function of the last disclosed prediction;
// exercises the adaptive path without ever separating the two worlds.
class AdaptiveFlipAdversary final : public Adversary {
 public:
  explicit AdaptiveFlipAdversary(AdversaryParams params) : params_(std::move(params)) {}

  std::pair<Dataset, Dataset> choose_training(std::int64_t n, UniformSource& rng) override {
    Dataset s = labeled_by(params_.target, random_points(params_.domain_size, n, rng));
    return {s, s};
  }

  std::pair<std::int64_t, std::int64_t> choose_queries(int, const std::vector<int>& disclosed,
                                                       UniformSource& rng) override {
    int last = disclosed.empty() ? 0 : disclosed.back();
    auto base = static_cast<std::int64_t>(
        uniform_below(rng, static_cast<std::uint64_t>(params_.domain_size)));
    std::int64_t x = last == 1 ? base / 2 : (params_.domain_size - 1 - base / 2);
    return {x, x};
  }

 private:
  AdversaryParams params_;
};

}  // namespace

AdversaryFactory make_adversary_factory(const std::string& name, const AdversaryParams& params) {
  if (name == "constant-pair") {
    return [params]() { return std::make_unique<ConstantPairAdversary>(params); };
  }
  if (name == "one-diff-training") {
    return [params]() { return std::make_unique<OneDiffTrainingAdversary>(params); };
  }
  if (name == "one-diff-query") {
    return [params]() { return std::make_unique<OneDiffQueryAdversary>(params); };
  }
  if (name == "adaptive-flip") {
    return [params]() { return std::make_unique<AdaptiveFlipAdversary>(params); };
  }
  throw std::invalid_argument("unknown adversary strategy: " + name);
}

std::string Transcript::outcome_string(std::size_t limit) const {
  std::string out;
  for (const auto& round : rounds) {
    if (out.size() >= limit) break;
    if (!round.disclosed) continue;
    out.push_back(round.failed ? 'F' : static_cast<char>('0' + round.label));
  }
  return out;
}

Transcript run_privacy_game(Adversary& adversary, const SystemFactory& system_factory, int b,
                            const GameConfig& config) {
  if (b != 0 && b != 1) throw std::invalid_argument("run_privacy_game: b must be 0 or 1");
  if (config.rounds < 1) throw std::invalid_argument("run_privacy_game: rounds must be >= 1");
  if (config.training_size < 1) {
    throw std::invalid_argument("run_privacy_game: training size must be >= 1");
  }

  Rng adversary_rng(config.adversary_seed);
  auto [s0, s1] = adversary.choose_training(config.training_size, adversary_rng);
  if (s0.size() != s1.size() ||
      static_cast<std::int64_t>(s0.size()) != config.training_size) {
    throw std::invalid_argument("privacy game: training sets must both have the agreed size");
  }
  std::int64_t differences = 0;
  for (std::size_t i = 0; i < s0.size(); ++i) {
    if (!(s0[i] == s1[i])) ++differences;
  }
  if (differences > 1) {
    throw std::invalid_argument("privacy game: training sets differ in more than one position");
  }
  int flag = differences == 1 ? 1 : 0;

  std::unique_ptr<PredictionSystem> system = system_factory();
  Rng mechanism_rng(config.mechanism_seed);
  system->train(b == 0 ? s0 : s1, mechanism_rng.split());

  Transcript transcript;
  transcript.adversary_seed = config.adversary_seed;
  std::vector<int> disclosed_history;
  bool system_failed = false;

  for (int round = 1; round <= config.rounds; ++round) {
    auto [x0, x1] = adversary.choose_queries(round, disclosed_history, adversary_rng);
    if (flag == 1 && x0 != x1) {
      throw std::invalid_argument("privacy game: unequal query pair after the flag is set");
    }
    bool hidden = x0 != x1;
    if (hidden) flag = 1;

    std::int64_t x = b == 0 ? x0 : x1;
    TranscriptRound entry;
    entry.disclosed = !hidden;
    if (!system_failed) {
      try {
        int label = system->predict(x);
        if (!hidden) entry.label = label;
      } catch (const PredictorFailure&) {
        system_failed = true;
      }
    }
    if (system_failed) entry.failed = true;
    if (!hidden) disclosed_history.push_back(entry.failed ? -1 : entry.label);
    transcript.rounds.push_back(entry);
    transcript.flag_history.push_back(flag);
  }
  return transcript;
}

SmokeTestReport transcript_smoke_test(const AdversaryFactory& adversary_factory,
                                      const SystemFactory& system_factory,
                                      const SmokeTestConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("smoke test: trials must be >= 1");
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> counts;
  for (int trial = 0; trial < config.trials; ++trial) {
    std::uint64_t trial_seed = derive_seed(config.seed, static_cast<std::uint64_t>(trial));
    for (int b = 0; b <= 1; ++b) {
      GameConfig game;
      game.training_size = config.training_size;
      game.rounds = config.rounds;
      // Worlds share per-trial seeds; only the bit differs.
      game.adversary_seed = derive_seed(trial_seed, 0);
      game.mechanism_seed = derive_seed(trial_seed, 1);
      std::unique_ptr<Adversary> adversary = adversary_factory();
      Transcript transcript = run_privacy_game(*adversary, system_factory, b, game);
      std::string outcome = transcript.outcome_string(static_cast<std::size_t>(config.rounds));
      if (b == 0) {
        ++counts[outcome].first;
      } else {
        ++counts[outcome].second;
      }
    }
  }

  std::vector<double> p0;
  std::vector<double> p1;
  p0.reserve(counts.size());
  p1.reserve(counts.size());
  for (const auto& [outcome, pair] : counts) {
    p0.push_back(static_cast<double>(pair.first) / config.trials);
    p1.push_back(static_cast<double>(pair.second) / config.trials);
  }
  FiniteDistribution d0 = FiniteDistribution::from_weights(p0);
  FiniteDistribution d1 = FiniteDistribution::from_weights(p1);

  SmokeTestReport report;
  report.support = static_cast<int>(counts.size());
  report.required_delta = required_delta(d0, d1, config.epsilon);
  report.slack = 3.0 * (1.0 + std::exp(config.epsilon)) / (2.0 * std::sqrt(config.trials));
  report.flagged = report.required_delta > config.delta + report.slack;
  report.sparse_support = counts.size() * 10 > static_cast<std::size_t>(config.trials);
  report.caveat =
      "statistical audit over sampled transcripts; bounded power, not a privacy proof";
  return report;
}

int worker_count_from_env() {
  const char* raw = std::getenv("EVERLAST_WORKERS");
  if (raw == nullptr) return 1;
  int value = std::atoi(raw);
  return value >= 1 ? value : 1;
}

void parallel_trials(int trials, int workers, const std::function<void(int)>& fn) {
  if (trials < 0) throw std::invalid_argument("parallel_trials: negative trial count");
  workers = std::max(1, std::min(workers, trials));
  if (workers <= 1) {
    for (int i = 0; i < trials; ++i) fn(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= trials) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> guard(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace everlast
