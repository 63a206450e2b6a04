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

#include "everlast/predictor.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace everlast {
namespace {

constexpr double kPaperTauFloor = 1.1e10;
constexpr double kPaperQueryMultiplier = 25600.0;
constexpr double kPaperTopBudgetMultiplier = 64.0;

std::int64_t to_count(double value, const char* what) {
  if (!(value >= 0.0) || value > 9.0e18) {
    throw std::overflow_error(std::string(what) + ": schedule value out of executable range");
  }
  return static_cast<std::int64_t>(std::llround(value));
}

double floor_subsample(double epsilon, double size, double denominator) {
  return std::floor(epsilon * size / denominator);
}

}  // namespace

double PredictorConfig::effective_subsample_denominator() const {
  if (subsample_denominator > 0.0) return subsample_denominator;
  return 3.0 + std::exp(epsilon + 4.0);
}

void PredictorConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("PredictorConfig: alpha and beta must lie in (0, 1)");
  }
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("PredictorConfig: epsilon must lie in (0, 1]");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("PredictorConfig: delta must lie in (0, 1)");
  }
  if (!(tau > 0.0)) throw std::invalid_argument("PredictorConfig: tau must be positive");
  if (!(query_multiplier > 0.0) || !(top_budget_multiplier > 0.0)) {
    throw std::invalid_argument("PredictorConfig: multipliers must be positive");
  }
  if (effective_subsample_denominator() < epsilon) {
    throw std::invalid_argument(
        "PredictorConfig: subsample denominator must be at least epsilon");
  }
  if (concept_class.vc_dimension() < 1) {
    throw std::invalid_argument("PredictorConfig: concept class must have VC dimension >= 1");
  }
  if (mode == PredictorMode::kPaperExact) {
    if (!(tau > kPaperTauFloor)) {
      throw std::invalid_argument("PredictorConfig: paper-exact mode requires tau > 1.1e10");
    }
    if (!(alpha < 1.0 / 16.0 && beta < 1.0 / 16.0 && delta < 1.0 / 16.0)) {
      throw std::invalid_argument(
          "PredictorConfig: paper-exact mode requires alpha, beta, delta < 1/16");
    }
    if (!(epsilon < 1.0)) {
      throw std::invalid_argument("PredictorConfig: paper-exact mode requires epsilon < 1");
    }
    if (query_multiplier != kPaperQueryMultiplier ||
        top_budget_multiplier != kPaperTopBudgetMultiplier || subsample_denominator != 0.0) {
      throw std::invalid_argument(
          "PredictorConfig: paper-exact mode pins the schedule constants");
    }
  }
}

double initial_n(const PredictorConfig& config) {
  config.validate();
  const long double vc = config.concept_class.vc_dimension();
  const long double a = config.alpha;
  const long double b = config.beta;
  const long double e = config.epsilon;
  const long double d = config.delta;
  const long double m = config.effective_subsample_denominator();
  const long double inner = 8.0L * vc * std::log2(26.0L / a) + 4.0L * std::log2(4.0L / b);
  const long double big = (64.0L * vc * std::log2(26.0L / a) + 32.0L * std::log2(4.0L / b)) /
                          (e * a * a * b * d);
  const long double log_big = std::log2(big);
  const long double n = 8.0L * config.tau / (a * a * a * e * e) * inner * inner *
                        std::log2(1.0L / d) * log_big * log_big * m;
  return static_cast<double>(std::ceil(n));
}

std::int64_t required_training_size(const PredictorConfig& config) {
  config.validate();
  PhaseScalars first = phase_scalars(1, config);
  long double need = static_cast<long double>(first.pool_size) *
                     config.effective_subsample_denominator() / config.epsilon;
  if (config.mode == PredictorMode::kPaperExact) {
    need = std::max(need, static_cast<long double>(initial_n(config)));
  }
  need = std::ceil(need);
  constexpr long double kMax = 9.0e18L;
  if (need > kMax) return std::numeric_limits<std::int64_t>::max();
  return static_cast<std::int64_t>(need);
}

PhaseScalars phase_scalars(int phase, const PredictorConfig& config) {
  if (phase < 1) throw std::invalid_argument("phase_scalars: phase index starts at 1");
  config.validate();
  const int vc = config.concept_class.vc_dimension();

  PhaseScalars s;
  s.index = phase;
  s.alpha = config.alpha / std::exp2(phase);
  s.beta = config.beta / std::exp2(phase);

  // The ceiled per-learner size feeds the later formulas, so the printed
  // schedule reproduces from integer values.
  const long double lambda = static_cast<long double>(vc_sample_size(s.alpha, s.beta, vc));
  const long double arg =
      lambda / (static_cast<long double>(config.epsilon) * s.alpha * s.beta * config.delta);
  const long double log_arg = std::log2(arg);
  const long double ensemble =
      std::ceil(static_cast<long double>(config.tau) * lambda * std::log2(1.0L / config.delta) *
                log_arg * log_arg / (s.alpha * config.epsilon));
  const long double pool = lambda * ensemble;
  const long double queries =
      std::ceil(static_cast<long double>(config.query_multiplier) * pool / config.epsilon);
  const long double top =
      std::ceil(static_cast<long double>(config.top_budget_multiplier) * s.alpha * queries);

  s.sample_size = static_cast<double>(lambda);
  s.ensemble_size = static_cast<double>(ensemble);
  s.pool_size = static_cast<double>(pool);
  s.query_budget = static_cast<double>(queries);
  s.top_budget = static_cast<double>(top);
  s.query_epsilon =
      1.0 / (3.0 * std::sqrt(static_cast<double>(top) * std::log(2.0 / config.delta)));
  s.query_delta = config.delta / (2.0 * static_cast<double>(top));
  return s;
}

PreflightReport preflight_validate(const PredictorConfig& config, int horizon) {
  if (horizon < 1) throw std::invalid_argument("preflight_validate: horizon must be >= 1");
  config.validate();
  const double vc = config.concept_class.vc_dimension();
  const double eps = config.epsilon;
  const double m = config.effective_subsample_denominator();

  PreflightReport report;
  std::vector<PhaseScalars> scalars;
  scalars.reserve(static_cast<std::size_t>(horizon) + 1);
  for (int i = 1; i <= horizon + 1; ++i) scalars.push_back(phase_scalars(i, config));

  for (int i = 1; i <= horizon; ++i) {
    const PhaseScalars& cur = scalars[static_cast<std::size_t>(i - 1)];
    const PhaseScalars& next = scalars[static_cast<std::size_t>(i)];
    PreflightPhase phase;
    phase.scalars = cur;

    const double labeled_sub = floor_subsample(eps, cur.pool_size, m);
    const double collected_sub = floor_subsample(eps, cur.query_budget, m);

    // Relabeled queries must cover the next phase's pool.
    PreflightCheck growth{"pool-growth", collected_sub, next.pool_size, false, false};
    growth.pass = growth.lhs >= growth.rhs;

    // Relabeling capacity, compared in log space because the capacity is
    // exponential in the labeled subsample.
    PreflightCheck capacity{"relabel-capacity", 0.0, 0.0, false, true};
    capacity.lhs = std::log(collected_sub + labeled_sub);
    capacity.rhs = std::log(cur.beta * vc / std::numbers::e) +
                   cur.alpha * labeled_sub / (2.0 * vc);
    capacity.pass = capacity.rhs >= capacity.lhs;

    // Threshold gap large enough for the privacy guarantee.
    PreflightCheck gap{"threshold-gap", 2.0 * cur.alpha, 0.0, false, false};
    gap.rhs = 12.0 / (cur.query_epsilon * cur.ensemble_size) *
              (std::log(10.0 / cur.query_epsilon) + std::log(1.0 / cur.query_delta) + 1.0);
    gap.pass = gap.lhs >= gap.rhs;

    // Ensemble large enough for the accuracy guarantee over the phase's
    // query budget.
    PreflightCheck support{"threshold-support", cur.ensemble_size, 0.0, false, false};
    support.rhs = 8.0 / (cur.alpha * cur.query_epsilon) *
                  (std::log(cur.query_budget + 1.0) + std::log(1.0 / cur.beta));
    support.pass = support.lhs >= support.rhs;

    phase.checks = {growth, capacity, gap, support};
    for (const auto& check : phase.checks) {
      if (!check.pass) {
        report.all_pass = false;
        report.warnings.push_back(
            (config.mode == PredictorMode::kPaperExact ? "error: phase " : "warning: phase ") +
            std::to_string(i) + " fails " + check.name);
      }
    }
    report.phases.push_back(std::move(phase));
  }
  return report;
}

Predictor::Predictor(const Dataset& training, PredictorConfig config, Rng rng)
    : Predictor(training, std::move(config), rng, NoiseFactory{}) {}

Predictor::Predictor(const Dataset& training, PredictorConfig config, Rng rng,
                     NoiseFactory bt_noise)
    : config_(std::move(config)), rng_(rng), noise_factory_(std::move(bt_noise)) {
  config_.validate();
  const std::int64_t required = required_training_size(config_);
  if (static_cast<std::int64_t>(training.size()) < required) {
    throw std::invalid_argument("Predictor: training set of size " +
                                std::to_string(training.size()) + " is below the required " +
                                std::to_string(required));
  }
  for (const auto& ex : training) {
    if (ex.label != 0 && ex.label != 1) {
      throw std::invalid_argument("Predictor: training set must be fully labeled");
    }
    if (!config_.concept_class.domain().contains(ex.point)) {
      throw std::out_of_range("Predictor: training point outside the domain");
    }
  }

  PhaseScalars first = phase_scalars(1, config_);
  Rng sub_rng = rng_.split();
  Dataset pool = subsample(training, to_count(first.pool_size, "initial pool"), sub_rng);

  bool realizable = empirical_error(erm(config_.concept_class, pool), pool).numerator == 0;
  start_phase(1, std::move(pool), "", true, false, realizable);
}

void Predictor::start_phase(int phase, Dataset pool, std::string relabel_id, bool pool_exact,
                            bool truncated, bool realizable) {
  PhaseScalars scalars = phase_scalars(phase, config_);
  const std::int64_t sample_size = to_count(scalars.sample_size, "sample size");
  const auto pool_actual = static_cast<std::int64_t>(pool.size());
  const std::int64_t blocks = pool_actual / sample_size;
  if (blocks < 1) {
    throw std::runtime_error("Predictor: phase " + std::to_string(phase) +
                             " pool cannot train a single classifier");
  }

  pool_ = std::move(pool);
  ensemble_.clear();
  ensemble_.reserve(static_cast<std::size_t>(blocks));
  for (std::int64_t t = 0; t < blocks; ++t) {
    Dataset block(pool_.begin() + t * sample_size, pool_.begin() + (t + 1) * sample_size);
    ensemble_.push_back(erm(config_.concept_class, block));
  }

  BtConfig bt_config;
  bt_config.database_size = blocks;
  bt_config.epsilon = scalars.query_epsilon;
  bt_config.delta = scalars.query_delta;
  bt_config.lower_threshold = 0.5 - scalars.alpha;
  bt_config.upper_threshold = 0.5 + scalars.alpha;
  bt_config.top_budget = to_count(scalars.top_budget, "top budget");
  bt_config.enforce_min_gap = config_.mode == PredictorMode::kPaperExact;

  std::unique_ptr<UniformSource> noise;
  if (noise_factory_) {
    noise = noise_factory_(phase);
  } else {
    noise = std::make_unique<Rng>(rng_.split());
  }
  bt_.emplace(bt_config, std::move(noise));

  accountant_.record("phase " + std::to_string(phase) + " threshold mechanism composite",
                     bt_->composite_params());

  collected_.clear();
  PhaseRecord record;
  record.scalars = scalars;
  record.pool_actual = pool_actual;
  record.ensemble_actual = blocks;
  record.pool_exact = pool_exact;
  record.truncated = truncated;
  record.pool_realizable = realizable;
  record.relabel_hypothesis = std::move(relabel_id);
  records_.push_back(std::move(record));
}

void Predictor::advance_phase() {
  const int phase = current_phase();
  const double m = config_.effective_subsample_denominator();
  const double eps = config_.epsilon;

  const std::int64_t labeled_sub = to_count(
      floor_subsample(eps, static_cast<double>(pool_.size()), m), "labeled subsample");
  const std::int64_t collected_sub = to_count(
      floor_subsample(eps, static_cast<double>(collected_.size()), m), "query subsample");
  if (labeled_sub < 1) {
    throw std::runtime_error("Predictor: subsample denominator leaves no labeled examples");
  }

  Rng labeled_rng = rng_.split();
  Dataset labeled_part = subsample(pool_, labeled_sub, labeled_rng);
  Rng collected_rng = rng_.split();
  std::vector<std::int64_t> query_points = subsample(collected_, collected_sub, collected_rng);
  Dataset unlabeled_part;
  unlabeled_part.reserve(query_points.size());
  for (auto x : query_points) unlabeled_part.push_back({x, kUnlabeled});

  Rng selection_rng = rng_.split();
  LabelBoostResult relabeled =
      label_boost(labeled_part, unlabeled_part, config_.concept_class, selection_rng);
  accountant_.record("phase " + std::to_string(phase) + " relabel selection mechanism",
                     {1.0, 0.0});

  // The relabeled query portion seeds the next phase.
  Dataset relabeled_queries(relabeled.relabeled.begin() + static_cast<std::ptrdiff_t>(labeled_sub),
                            relabeled.relabeled.end());

  PhaseScalars next = phase_scalars(phase + 1, config_);
  const std::int64_t next_sample_size = to_count(next.sample_size, "sample size");
  std::int64_t next_pool_size = to_count(next.pool_size, "next pool");
  bool exact = true;
  bool truncated = false;
  if (static_cast<std::int64_t>(relabeled_queries.size()) < next_pool_size) {
    if (config_.strict_growth || config_.mode == PredictorMode::kPaperExact) {
      throw std::runtime_error(
          "Predictor: relabeled query pool of size " + std::to_string(relabeled_queries.size()) +
          " cannot seed phase " + std::to_string(phase + 1) + " (needs " +
          std::to_string(next_pool_size) + ")");
    }
    const std::int64_t blocks = static_cast<std::int64_t>(relabeled_queries.size()) /
                                next_sample_size;
    if (blocks < 1) {
      throw std::runtime_error("Predictor: relabeled pool too small for any classifier");
    }
    next_pool_size = blocks * next_sample_size;
    exact = false;
    truncated = true;
  }

  Rng pool_rng = rng_.split();
  Dataset next_pool = subsample(relabeled_queries, next_pool_size, pool_rng);
  const bool realizable = empirical_error(relabeled.hypothesis, next_pool).numerator == 0;

  start_phase(phase + 1, std::move(next_pool), relabeled.hypothesis.id(), exact, truncated,
              realizable);
}

Prediction Predictor::predict(std::int64_t x) {
  if (failed_) throw PredictorFailure("Predictor: threshold budget exhausted");
  if (static_cast<double>(collected_.size()) >= records_.back().scalars.query_budget) {
    advance_phase();
  }

  double votes = 0.0;
  for (const auto& h : ensemble_) votes += h.eval(x) ? 1.0 : 0.0;
  const double q = votes / static_cast<double>(ensemble_.size());

  BtAnswer answer = bt_->query(q);
  collected_.push_back(x);
  ++ordinal_;
  PhaseRecord& record = records_.back();
  ++record.queries;
  if (answer == BtAnswer::kTop) ++record.tops;
  if (bt_->halted()) failed_ = true;

  return Prediction{answer == BtAnswer::kLeft ? 0 : 1, record.scalars.index, answer, ordinal_};
}

int Predictor::phases_completed() const {
  int completed = 0;
  for (const auto& record : records_) {
    if (static_cast<double>(record.queries) >= record.scalars.query_budget) ++completed;
  }
  return completed;
}

std::string Predictor::snapshot_json() const {
  nlohmann::json out;
  const PhaseRecord& record = records_.back();
  out["phase"] = record.scalars.index;
  out["failed"] = failed_;
  out["queries_answered_total"] = ordinal_;
  out["phase_queries"] = record.queries;
  out["phase_tops"] = record.tops;
  out["remaining_top_budget"] = bt_ ? bt_->remaining_budget() : 0;
  out["schedule"] = {
      {"alpha", record.scalars.alpha},
      {"beta", record.scalars.beta},
      {"sample_size", record.scalars.sample_size},
      {"ensemble_size", record.scalars.ensemble_size},
      {"pool_size", record.scalars.pool_size},
      {"query_budget", record.scalars.query_budget},
      {"top_budget", record.scalars.top_budget},
      {"query_epsilon", record.scalars.query_epsilon},
      {"query_delta", record.scalars.query_delta},
  };
  const double m = config_.effective_subsample_denominator();
  out["subsample_ratio"] = config_.epsilon / m;
  out["amplification_applicable"] = m >= 3.0 + std::exp(config_.epsilon + 4.0);
  nlohmann::json ledger = nlohmann::json::array();
  for (const auto& [label, params] : accountant_.entries()) {
    ledger.push_back({{"label", label}, {"epsilon", params.epsilon}, {"delta", params.delta}});
  }
  out["ledger"] = ledger;
  ComposedParams total = accountant_.total();
  out["ledger_total"] = {{"epsilon", total.params.epsilon},
                         {"delta", total.params.delta},
                         {"valid", total.valid}};
  return out.dump(2);
}

}  // namespace everlast
