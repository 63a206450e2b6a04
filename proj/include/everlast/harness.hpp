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

#ifndef EVERLAST_HARNESS_HPP_
#define EVERLAST_HARNESS_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "everlast/concepts.hpp"
#include "everlast/dp_core.hpp"
#include "everlast/predictor.hpp"
#include "everlast/rng.hpp"

namespace everlast {

// ---------------------------------------------------------------------------
// Accuracy experiments
// ---------------------------------------------------------------------------

struct AccuracyExperiment {
  PredictorConfig predictor;
  Distribution dist = Distribution::uniform(1);
  Hypothesis target = Hypothesis::threshold(1, 0);
  std::int64_t training_size = 0;  // 0: exactly the required minimum
  std::int64_t stream_length = 0;  // 0: the full query budget of `phase_horizon` phases
  int phase_horizon = 5;           // stop a trial once this many phases completed
  int trials = 1;
  std::uint64_t seed = 1;
};

struct PhaseCheck {
  int phase = 1;
  std::int64_t pool_expected = 0;
  std::int64_t pool_actual = 0;
  bool pool_exact = true;
  bool realizable = true;
  bool halving_exact = true;  // alpha_i, beta_i follow the halving schedule
  double ensemble_error = 0.0;  // exact disagreement mass of the majority vote
};

struct AccuracyTrialResult {
  int trial = 0;
  int phases_completed = 0;
  bool failed = false;
  std::int64_t failure_round = -1;
  std::int64_t queries = 0;
  std::int64_t mistakes = 0;
  double mistake_rate = 0.0;
  std::vector<PhaseCheck> phase_checks;
};

struct AccuracyReport {
  std::vector<AccuracyTrialResult> trials;
  std::int64_t stream_length = 0;
  double completion_fraction = 0.0;   // trials completing >= horizon phases
  double error_within_bound_fraction = 0.0;  // mistake_rate <= 6*alpha
  bool all_pools_exact = true;
  bool all_realizable = true;
  bool all_halving_exact = true;
};

// Per trial: draws a training set labeled by the target, runs the predictor
// over an i.i.d. query stream, and checks the per-phase schedule invariants.
AccuracyReport run_accuracy_experiment(const AccuracyExperiment& experiment, int workers = 1);

// ---------------------------------------------------------------------------
// Privacy game
// ---------------------------------------------------------------------------

// Anything that trains once and then labels queries. Implementations may
// throw PredictorFailure from predict(); the game records such rounds.
class PredictionSystem {
 public:
  virtual ~PredictionSystem() = default;
  virtual void train(const Dataset& training, Rng rng) = 0;
  virtual int predict(std::int64_t x) = 0;
};

using SystemFactory = std::function<std::unique_ptr<PredictionSystem>()>;

// The everlasting predictor behind the PredictionSystem interface.
SystemFactory predictor_system_factory(PredictorConfig config);
// Deliberately broken reference system that leaks a training label verbatim;
// exists to prove the audit has power.
SystemFactory canary_system_factory();

// Two-world adversary: produces a pair of training sets differing in at most
// one position, then per round a pair of query points, possibly as a
// function of the predictions disclosed so far.
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::pair<Dataset, Dataset> choose_training(std::int64_t n, UniformSource& rng) = 0;
  // `disclosed` holds one entry per past round: the label, or -1 when the
  // round was hidden.
  virtual std::pair<std::int64_t, std::int64_t> choose_queries(
      int round, const std::vector<int>& disclosed, UniformSource& rng) = 0;
};

using AdversaryFactory = std::function<std::unique_ptr<Adversary>()>;

struct AdversaryParams {
  std::int64_t domain_size = 2;
  Hypothesis target = Hypothesis::threshold(2, 1);
  int diff_round = 1;  // for the one-diff-query strategy
};

// Named strategies: "constant-pair", "one-diff-training", "one-diff-query",
// "adaptive-flip".
AdversaryFactory make_adversary_factory(const std::string& name, const AdversaryParams& params);

struct TranscriptRound {
  bool disclosed = false;
  int label = -1;       // -1 when hidden
  bool failed = false;  // the system refused this round
};

struct Transcript {
  std::uint64_t adversary_seed = 0;
  std::vector<TranscriptRound> rounds;
  std::vector<int> flag_history;

  // Disclosed predictions, in order, as '0'/'1' (failed rounds as 'F'),
  // truncated to the first `limit` symbols.
  std::string outcome_string(std::size_t limit) const;
};

struct GameConfig {
  std::int64_t training_size = 0;
  int rounds = 1;
  std::uint64_t mechanism_seed = 1;
  std::uint64_t adversary_seed = 1;
};

// One execution of the two-world game for the given world bit. Enforces the
// game rules (at most one training difference; equal query pairs once the
// flag is set) and hides the prediction of any round with differing queries.
Transcript run_privacy_game(Adversary& adversary, const SystemFactory& system_factory, int b,
                            const GameConfig& config);

// ---------------------------------------------------------------------------
// Transcript distinguishability audit
// ---------------------------------------------------------------------------

struct SmokeTestConfig {
  std::int64_t training_size = 0;
  int rounds = 4;
  int trials = 1000;  // per world bit
  double epsilon = 1.0;
  double delta = 0.0;
  std::uint64_t seed = 1;
};

struct SmokeTestReport {
  int support = 0;  // distinct outcome strings observed
  double required_delta = 0.0;  // empirical, at the configured epsilon
  double slack = 0.0;           // statistical allowance added to delta
  bool flagged = false;
  bool sparse_support = false;  // support too large for the sample size
  std::string caveat;
};

// Empirical two-sample audit of transcript indistinguishability. Builds
// outcome-string distributions for b=0 and b=1 over fresh seeds and flags
// when the worst-case event ratio exceeds e^epsilon by more than delta plus
// sampling slack. Statistical evidence only, not a proof.
SmokeTestReport transcript_smoke_test(const AdversaryFactory& adversary_factory,
                                      const SystemFactory& system_factory,
                                      const SmokeTestConfig& config);

// ---------------------------------------------------------------------------
// Trial fan-out
// ---------------------------------------------------------------------------

// Worker cap from EVERLAST_WORKERS (default 1).
int worker_count_from_env();

// Runs fn(0..trials-1), fanning out across `workers` threads. Callers keep
// determinism by deriving all randomness from the trial index.
void parallel_trials(int trials, int workers, const std::function<void(int)>& fn);

}  // namespace everlast

#endif  // EVERLAST_HARNESS_HPP_
