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

#ifndef EVERLAST_PREDICTOR_HPP_
#define EVERLAST_PREDICTOR_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "everlast/between_thresholds.hpp"
#include "everlast/concepts.hpp"
#include "everlast/dp_core.hpp"
#include "everlast/label_boost.hpp"
#include "everlast/rng.hpp"

namespace everlast {

enum class PredictorMode { kPaperExact, kScaled };

// Thrown by predict() once the threshold mechanism has exhausted its in-gap
// budget; the failure is permanent.
class PredictorFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Target parameters plus the schedule constants. Paper-exact mode pins the
// constants (query multiplier 25600, top-budget multiplier 64, subsample
// denominator 3+exp(epsilon+4)) and enforces tau > 1.1e10, alpha/beta/delta
// < 1/16, epsilon < 1. Scaled mode keeps every structural step and lets the
// constants shrink so the schedule fits desk-scale experiments; the
// probability bounds of the full-scale analysis are not claimed there.
struct PredictorConfig {
  PredictorMode mode = PredictorMode::kScaled;
  double alpha = 0.5;
  double beta = 0.5;
  double epsilon = 1.0;
  double delta = 1.0 / 16.0;
  double tau = 1.0;
  double query_multiplier = 25600.0;    // queries per phase = mult * |pool| / epsilon
  double top_budget_multiplier = 64.0;  // in-gap budget = ceil(mult * alpha_i * queries)
  double subsample_denominator = 0.0;   // 0 selects 3 + exp(epsilon + 4)
  ConceptClass concept_class;
  // Paper-exact semantics for pool shortfalls at a phase transition: throw
  // instead of shrinking the next ensemble.
  bool strict_growth = false;

  double effective_subsample_denominator() const;
  void validate() const;
};

// The per-phase schedule. Integer-valued quantities are stored as doubles
// because paper-exact magnitudes exceed 64-bit range; desk-scale values are
// exactly representable and convert losslessly.
struct PhaseScalars {
  int index = 1;
  double alpha = 0.0;         // alpha_i = alpha / 2^i
  double beta = 0.0;          // beta_i = beta / 2^i
  double sample_size = 0.0;   // per-learner training size (ceil)
  double ensemble_size = 0.0; // trained classifiers this phase (ceil)
  double pool_size = 0.0;     // sample_size * ensemble_size
  double query_budget = 0.0;  // queries answered this phase (ceil)
  double top_budget = 0.0;    // tolerated in-gap answers (ceil)
  double query_epsilon = 0.0; // per-query threshold-mechanism epsilon
  double query_delta = 0.0;   // per-query threshold-mechanism delta
};

// Training-set size the displayed initial-size formula demands (ceiled).
double initial_n(const PredictorConfig& config);

// |S| the implementation actually needs before phase 1: pool * m / epsilon,
// and additionally initial_n in paper-exact mode.
std::int64_t required_training_size(const PredictorConfig& config);

PhaseScalars phase_scalars(int phase, const PredictorConfig& config);

struct PreflightCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
  bool log_scale = false;  // both sides reported as natural logs
};

struct PreflightPhase {
  PhaseScalars scalars;
  std::vector<PreflightCheck> checks;
};

struct PreflightReport {
  std::vector<PreflightPhase> phases;
  bool all_pass = true;
  std::vector<std::string> warnings;  // failed checks, phrased per mode
};

// Evaluates the four schedule-consistency inequalities for phases
// 1..horizon: pool growth across a transition, relabeling capacity,
// threshold gap, and threshold-support size. The inequalities are evaluated
// with natural logarithms throughout (see README); failures are errors in
// paper-exact mode and warnings in scaled mode.
PreflightReport preflight_validate(const PredictorConfig& config, int horizon = 5);

struct Prediction {
  int label = 0;
  int phase = 1;
  BtAnswer answer = BtAnswer::kTop;
  std::int64_t ordinal = 0;  // 1-based query index across phases
};

// Per-phase audit trail.
struct PhaseRecord {
  PhaseScalars scalars;
  std::int64_t pool_actual = 0;
  std::int64_t ensemble_actual = 0;
  bool pool_exact = true;        // pool_actual == sample_size * ensemble planned
  bool truncated = false;        // ensemble shrunk to fit the available pool
  bool pool_realizable = true;   // a single class member labels the whole pool
  std::string relabel_hypothesis;  // id of the hypothesis that labeled this pool
  std::int64_t tops = 0;         // in-gap answers spent during the phase
  std::int64_t queries = 0;      // queries answered during the phase
};

// The private everlasting predictor: trains an ensemble per phase, answers
// queries through a noisy two-threshold majority vote, and at the end of a
// phase relabels a subsample of the collected queries to seed the next
// phase. The phase transition runs lazily, immediately before the first
// query of the following phase.
class Predictor {
 public:
  using NoiseFactory = std::function<std::unique_ptr<UniformSource>(int phase)>;

  Predictor(const Dataset& training, PredictorConfig config, Rng rng);
  Predictor(const Dataset& training, PredictorConfig config, Rng rng, NoiseFactory bt_noise);

  // Answers one query. Throws PredictorFailure permanently once the
  // threshold mechanism has halted.
  Prediction predict(std::int64_t x);

  bool failed() const { return failed_; }
  int current_phase() const { return static_cast<int>(records_.size()); }
  // Phases whose full query budget has been answered.
  int phases_completed() const;
  const std::vector<PhaseRecord>& phase_records() const { return records_; }
  const std::vector<Hypothesis>& ensemble() const { return ensemble_; }
  const PrivacyAccountant& accountant() const { return accountant_; }
  const PredictorConfig& config() const { return config_; }

  // Schedule scalars, counters and budget state for reporting.
  std::string snapshot_json() const;

 private:
  void start_phase(int phase, Dataset pool, std::string relabel_id, bool pool_exact,
                   bool truncated, bool realizable);
  void advance_phase();

  PredictorConfig config_;
  Rng rng_;
  NoiseFactory noise_factory_;
  Dataset pool_;                     // labeled examples backing the current phase
  std::vector<Hypothesis> ensemble_;
  std::optional<BetweenThresholds> bt_;
  std::vector<std::int64_t> collected_;  // queries of the current phase
  std::vector<PhaseRecord> records_;
  PrivacyAccountant accountant_;
  std::int64_t ordinal_ = 0;
  bool failed_ = false;
};

}  // namespace everlast

#endif  // EVERLAST_PREDICTOR_HPP_
