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

#ifndef EVERLAST_DP_CORE_HPP_
#define EVERLAST_DP_CORE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "everlast/concepts.hpp"
#include "everlast/rng.hpp"

namespace everlast {

// An (epsilon, delta) privacy guarantee.
struct PrivacyParams {
  double epsilon = 0.0;
  double delta = 0.0;

  void validate() const;  // epsilon >= 0, 0 <= delta < 1
};

// Result of composing guarantees; `valid` is false once delta reaches 1.
struct ComposedParams {
  PrivacyParams params;
  bool valid = true;
};

// Exact distribution over a finite outcome set (outcomes are indices
// 0..size-1). Weights are normalized on construction.
class FiniteDistribution {
 public:
  static FiniteDistribution from_weights(const std::vector<double>& weights);
  static FiniteDistribution from_probabilities(std::vector<double> probs);

  std::size_t size() const { return probs_.size(); }
  double prob(std::size_t i) const { return probs_.at(i); }
  const std::vector<double>& probs() const { return probs_; }

 private:
  explicit FiniteDistribution(std::vector<double> probs) : probs_(std::move(probs)) {}
  std::vector<double> probs_;
};

// One Laplace draw at the given scale via inverse CDF on a single uniform.
// A uniform of exactly 0.5 maps to exactly 0.
double laplace_sample(double scale, UniformSource& rng);

// Exact selection distribution of the exponential mechanism: outcome i gets
// weight exp(epsilon * score[i] / (2 * sensitivity)).
FiniteDistribution exponential_mechanism_distribution(const std::vector<double>& scores,
                                                      double epsilon, double sensitivity);

// Sample an outcome index from the exponential mechanism.
std::size_t exponential_mechanism_sample(const std::vector<double>& scores, double epsilon,
                                         double sensitivity, UniformSource& rng);

// Basic composition: parameters add.
ComposedParams compose(const PrivacyParams& a, const PrivacyParams& b);

struct AmplificationResult {
  std::int64_t outer_size = 0;  // required size of the larger database
  PrivacyParams params;         // guarantee after subsampling
};

// Privacy amplification by subsampling an inner mechanism on n records out
// of outer_size = ceil((n/epsilon) * (3 + exp(inner.epsilon))). Requires the
// target epsilon to be at most 1.
AmplificationResult amplify_by_subsampling(const PrivacyParams& inner, double target_epsilon,
                                           std::int64_t inner_size);

// Uniformly random m-subset, original order preserved (selection sampling).
Dataset subsample(const Dataset& data, std::int64_t m, UniformSource& rng);
std::vector<std::int64_t> subsample(const std::vector<std::int64_t>& data, std::int64_t m,
                                    UniformSource& rng);

// Privacy cost of a threshold mechanism allowed to report c in-gap answers
// before halting: sqrt(2c ln(1/(c delta))) eps + c eps (e^eps - 1). The
// accompanying delta is 2 c delta.
double c_halt_epsilon(double epsilon, double delta, std::int64_t c);

// Smallest delta for which d0 and d1 are (epsilon, delta)-indistinguishable;
// exact on finite supports (hockey-stick divergence, both directions).
double required_delta(const FiniteDistribution& d0, const FiniteDistribution& d1,
                      double epsilon);

// Exact finite-support indistinguishability check at tolerance 1e-12.
bool indistinguishable(const FiniteDistribution& d0, const FiniteDistribution& d1,
                       double epsilon, double delta);

// Append-only ledger of privacy costs; totals by basic composition.
class PrivacyAccountant {
 public:
  void record(std::string label, PrivacyParams params);
  ComposedParams total() const;
  const std::vector<std::pair<std::string, PrivacyParams>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, PrivacyParams>> entries_;
};

}  // namespace everlast

#endif  // EVERLAST_DP_CORE_HPP_
