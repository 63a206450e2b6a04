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

#include "everlast/between_thresholds.hpp"

#include <cmath>
#include <stdexcept>

namespace everlast {

char bt_answer_char(BtAnswer a) {
  switch (a) {
    case BtAnswer::kLeft: return 'L';
    case BtAnswer::kRight: return 'R';
    case BtAnswer::kTop: return 'T';
  }
  return '?';
}

void BtConfig::validate() const {
  if (database_size < 1) throw std::invalid_argument("BtConfig: database size must be >= 1");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("BtConfig: epsilon must lie in (0, 1]");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("BtConfig: delta must lie in (0, 1)");
  }
  if (!(lower_threshold < upper_threshold)) {
    throw std::invalid_argument("BtConfig: lower threshold must be below upper threshold");
  }
  if (top_budget < 1) throw std::invalid_argument("BtConfig: top budget must be >= 1");
  if (enforce_min_gap) {
    double gap = upper_threshold - lower_threshold;
    double required = bt_min_gap(epsilon, delta, database_size);
    if (gap < required) {
      throw std::invalid_argument(
          "BtConfig: threshold gap " + std::to_string(gap) +
          " is below the private minimum " + std::to_string(required));
    }
  }
}

BetweenThresholds::BetweenThresholds(const BtConfig& config, Rng rng)
    : BetweenThresholds(config, std::make_unique<Rng>(rng)) {}

BetweenThresholds::BetweenThresholds(const BtConfig& config,
                                     std::unique_ptr<UniformSource> noise)
    : config_(config), noise_(std::move(noise)) {
  config_.validate();
  if (!noise_) throw std::invalid_argument("BetweenThresholds: missing noise source");
  double scale = 2.0 / (config_.epsilon * static_cast<double>(config_.database_size));
  double mu = laplace_sample(scale, *noise_);
  noisy_lower_ = config_.lower_threshold + mu;
  noisy_upper_ = config_.upper_threshold - mu;
}

BtAnswer BetweenThresholds::query(double q) {
  if (halted_) throw std::logic_error("BetweenThresholds: query after halting");
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::domain_error("BetweenThresholds: query value must lie in [0, 1]");
  }
  double scale = 6.0 / (config_.epsilon * static_cast<double>(config_.database_size));
  double noisy = q + laplace_sample(scale, *noise_);
  ++queries_answered_;
  BtAnswer answer;
  if (noisy < noisy_lower_) {
    answer = BtAnswer::kLeft;
  } else if (noisy > noisy_upper_) {
    answer = BtAnswer::kRight;
  } else {
    // Boundary equality lands in the gap.
    answer = BtAnswer::kTop;
    ++tops_emitted_;
    if (tops_emitted_ >= config_.top_budget) halted_ = true;
  }
  answers_.push_back(bt_answer_char(answer));
  return answer;
}

PrivacyParams BetweenThresholds::composite_params() const {
  return {c_halt_epsilon(config_.epsilon, config_.delta, config_.top_budget),
          2.0 * static_cast<double>(config_.top_budget) * config_.delta};
}

double bt_min_gap(double epsilon, double delta, std::int64_t n) {
  if (!(epsilon > 0.0 && epsilon <= 1.0) || !(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("bt_min_gap: epsilon and delta must lie in (0, 1]");
  }
  if (n < 1) throw std::invalid_argument("bt_min_gap: n must be >= 1");
  return 12.0 / (epsilon * static_cast<double>(n)) *
         (std::log2(10.0 / epsilon) + std::log2(1.0 / delta) + 1.0);
}

std::int64_t bt_min_n(double alpha, double beta, double epsilon, std::int64_t k) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0) ||
      !(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("bt_min_n: alpha, beta, epsilon must lie in (0, 1]");
  }
  if (k < 1) throw std::invalid_argument("bt_min_n: k must be >= 1");
  long double value = 8.0L / (static_cast<long double>(alpha) * epsilon) *
                      (std::log2(static_cast<long double>(k) + 1.0L) +
                       std::log2(1.0L / static_cast<long double>(beta)));
  return static_cast<std::int64_t>(std::ceil(value));
}

}  // namespace everlast
