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

#ifndef EVERLAST_BETWEEN_THRESHOLDS_HPP_
#define EVERLAST_BETWEEN_THRESHOLDS_HPP_

#include <cstdint>
#include <memory>
#include <string>

#include "everlast/dp_core.hpp"
#include "everlast/rng.hpp"

namespace everlast {

enum class BtAnswer { kLeft, kRight, kTop };

char bt_answer_char(BtAnswer a);  // 'L', 'R', 'T'

struct BtConfig {
  std::int64_t database_size = 1;  // n
  double epsilon = 1.0;            // per-instance privacy parameter
  double delta = 1e-9;             // pairs with epsilon for the gap requirement
  double lower_threshold = 0.0;
  double upper_threshold = 1.0;
  std::int64_t top_budget = 1;     // in-gap answers tolerated before halting
  // When set, construction refuses threshold gaps below bt_min_gap. Scaled
  // experiments that trade the privacy guarantee for runtime may disable it;
  // the violation is then the caller's to report.
  bool enforce_min_gap = true;

  void validate() const;
};

// Noisy two-threshold classifier for adaptively chosen [0,1]-valued queries.
// One noisy offset is drawn at initialization and applied to both
// thresholds; every query gets fresh noise. Queries that land between the
// noisy thresholds consume the top budget; the instance halts permanently
// once the budget is spent.
class BetweenThresholds {
 public:
  BetweenThresholds(const BtConfig& config, Rng rng);
  // Noise injection for tests: a stub returning uniform 0.5 yields exact
  // zero noise.
  BetweenThresholds(const BtConfig& config, std::unique_ptr<UniformSource> noise);

  // Answers one query; the answer that spends the last budget unit is still
  // returned, after which the instance is halted. Throws std::logic_error on
  // queries after halting and std::domain_error for queries outside [0,1].
  BtAnswer query(double q);

  bool halted() const { return halted_; }
  std::int64_t tops_emitted() const { return tops_emitted_; }
  std::int64_t remaining_budget() const { return config_.top_budget - tops_emitted_; }
  std::int64_t queries_answered() const { return queries_answered_; }
  const BtConfig& config() const { return config_; }

  double noisy_lower() const { return noisy_lower_; }
  double noisy_upper() const { return noisy_upper_; }

  // Answers so far encoded over {L, R, T}.
  const std::string& answer_stream() const { return answers_; }

  PrivacyParams per_query_params() const { return {config_.epsilon, config_.delta}; }
  // Cost of the whole run under the c-halt composition.
  PrivacyParams composite_params() const;

 private:
  BtConfig config_;
  std::unique_ptr<UniformSource> noise_;
  double noisy_lower_ = 0.0;
  double noisy_upper_ = 0.0;
  std::int64_t tops_emitted_ = 0;
  std::int64_t queries_answered_ = 0;
  bool halted_ = false;
  std::string answers_;
};

// Minimum threshold gap under which the mechanism is (epsilon, delta)
// private: (12/(epsilon n)) (log2(10/epsilon) + log2(1/delta) + 1).
double bt_min_gap(double epsilon, double delta, std::int64_t n);

// Database size sufficient for the accuracy guarantee over k adaptive
// queries: ceil((8/(alpha epsilon)) (log2(k+1) + log2(1/beta))).
std::int64_t bt_min_n(double alpha, double beta, double epsilon, std::int64_t k);

}  // namespace everlast

#endif  // EVERLAST_BETWEEN_THRESHOLDS_HPP_
