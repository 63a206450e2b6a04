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

#include "everlast/dp_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace everlast {
namespace {

constexpr double kTolerance = 1e-12;

template <typename T>
T generic_subsample(const T& data, std::int64_t m, UniformSource& rng) {
  const auto n = static_cast<std::int64_t>(data.size());
  if (m < 0 || m > n) {
    throw std::invalid_argument("subsample: subset size must lie in [0, |data|]");
  }
  T out;
  out.reserve(static_cast<std::size_t>(m));
  std::int64_t needed = m;
  std::int64_t remaining = n;
  for (std::int64_t i = 0; i < n && needed > 0; ++i, --remaining) {
    if (static_cast<std::int64_t>(
            uniform_below(rng, static_cast<std::uint64_t>(remaining))) < needed) {
      out.push_back(data[static_cast<std::size_t>(i)]);
      --needed;
    }
  }
  return out;
}

}  // namespace

void PrivacyParams::validate() const {
  if (epsilon < 0.0) throw std::invalid_argument("PrivacyParams: epsilon must be non-negative");
  if (delta < 0.0 || delta >= 1.0) {
    throw std::invalid_argument("PrivacyParams: delta must lie in [0, 1)");
  }
}

FiniteDistribution FiniteDistribution::from_weights(const std::vector<double>& weights) {
  if (weights.empty()) throw std::invalid_argument("FiniteDistribution: empty weight vector");
  long double sum = 0.0L;
  for (double w : weights) {
    if (w < 0.0 || !std::isfinite(w)) {
      throw std::invalid_argument("FiniteDistribution: weights must be finite and non-negative");
    }
    sum += w;
  }
  if (sum <= 0.0L) throw std::invalid_argument("FiniteDistribution: weights must not all be zero");
  std::vector<double> probs(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    probs[i] = static_cast<double>(weights[i] / sum);
  }
  return FiniteDistribution(std::move(probs));
}

FiniteDistribution FiniteDistribution::from_probabilities(std::vector<double> probs) {
  if (probs.empty()) throw std::invalid_argument("FiniteDistribution: empty probability vector");
  long double sum = 0.0L;
  for (double p : probs) {
    if (p < 0.0) throw std::invalid_argument("FiniteDistribution: negative probability");
    sum += p;
  }
  if (std::abs(static_cast<double>(sum) - 1.0) > kTolerance) {
    throw std::invalid_argument("FiniteDistribution: probabilities must sum to 1");
  }
  return FiniteDistribution(std::move(probs));
}

double laplace_sample(double scale, UniformSource& rng) {
  if (!(scale > 0.0)) throw std::invalid_argument("laplace_sample: scale must be positive");
  double u = rng.next_uniform();
  double centered = u - 0.5;
  double tail = 1.0 - 2.0 * std::abs(centered);
  tail = std::max(tail, 1e-300);
  double magnitude = -scale * std::log(tail);
  if (centered < 0.0) return -magnitude;
  if (centered > 0.0) return magnitude;
  return 0.0;
}

FiniteDistribution exponential_mechanism_distribution(const std::vector<double>& scores,
                                                      double epsilon, double sensitivity) {
  if (scores.empty()) throw std::invalid_argument("exponential mechanism: empty outcome set");
  if (!(epsilon > 0.0)) throw std::invalid_argument("exponential mechanism: epsilon must be positive");
  if (!(sensitivity > 0.0)) {
    throw std::invalid_argument("exponential mechanism: sensitivity must be positive");
  }
  // Shift by the max score; the normalization cancels the shift exactly.
  double max_score = *std::max_element(scores.begin(), scores.end());
  std::vector<double> weights(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    weights[i] = std::exp(epsilon * (scores[i] - max_score) / (2.0 * sensitivity));
  }
  return FiniteDistribution::from_weights(weights);
}

std::size_t exponential_mechanism_sample(const std::vector<double>& scores, double epsilon,
                                         double sensitivity, UniformSource& rng) {
  FiniteDistribution dist = exponential_mechanism_distribution(scores, epsilon, sensitivity);
  double u = rng.next_uniform();
  long double acc = 0.0L;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    acc += dist.prob(i);
    if (u < acc) return i;
  }
  return dist.size() - 1;
}

ComposedParams compose(const PrivacyParams& a, const PrivacyParams& b) {
  a.validate();
  b.validate();
  PrivacyParams total{a.epsilon + b.epsilon, a.delta + b.delta};
  return ComposedParams{total, total.delta < 1.0};
}

AmplificationResult amplify_by_subsampling(const PrivacyParams& inner, double target_epsilon,
                                           std::int64_t inner_size) {
  inner.validate();
  if (!(target_epsilon > 0.0 && target_epsilon <= 1.0)) {
    throw std::invalid_argument("amplify_by_subsampling: target epsilon must lie in (0, 1]");
  }
  if (inner_size < 1) {
    throw std::invalid_argument("amplify_by_subsampling: inner size must be >= 1");
  }
  double factor = 3.0 + std::exp(inner.epsilon);
  auto outer = static_cast<std::int64_t>(
      std::ceil(static_cast<double>(inner_size) / target_epsilon * factor));
  PrivacyParams amplified{target_epsilon, 4.0 * target_epsilon / factor * inner.delta};
  return AmplificationResult{outer, amplified};
}

Dataset subsample(const Dataset& data, std::int64_t m, UniformSource& rng) {
  return generic_subsample(data, m, rng);
}

std::vector<std::int64_t> subsample(const std::vector<std::int64_t>& data, std::int64_t m,
                                    UniformSource& rng) {
  return generic_subsample(data, m, rng);
}

double c_halt_epsilon(double epsilon, double delta, std::int64_t c) {
  if (c < 1) throw std::invalid_argument("c_halt_epsilon: c must be >= 1");
  if (!(epsilon > 0.0)) throw std::invalid_argument("c_halt_epsilon: epsilon must be positive");
  if (!(delta > 0.0) || static_cast<double>(c) * delta >= 1.0) {
    throw std::invalid_argument("c_halt_epsilon: requires 0 < c*delta < 1");
  }
  double cd = static_cast<double>(c);
  return std::sqrt(2.0 * cd * std::log(1.0 / (cd * delta))) * epsilon +
         cd * epsilon * (std::exp(epsilon) - 1.0);
}

double required_delta(const FiniteDistribution& d0, const FiniteDistribution& d1,
                      double epsilon) {
  if (d0.size() != d1.size()) {
    throw std::invalid_argument("required_delta: distributions must share a support");
  }
  if (epsilon < 0.0) throw std::invalid_argument("required_delta: epsilon must be non-negative");
  const double factor = std::exp(epsilon);
  long double forward = 0.0L;
  long double backward = 0.0L;
  for (std::size_t i = 0; i < d0.size(); ++i) {
    // The worst event collects exactly the outcomes where one side exceeds
    // e^epsilon times the other.
    long double excess0 = static_cast<long double>(d0.prob(i)) - factor * d1.prob(i);
    if (excess0 > 0.0L) forward += excess0;
    long double excess1 = static_cast<long double>(d1.prob(i)) - factor * d0.prob(i);
    if (excess1 > 0.0L) backward += excess1;
  }
  return static_cast<double>(std::max(forward, backward));
}

bool indistinguishable(const FiniteDistribution& d0, const FiniteDistribution& d1,
                       double epsilon, double delta) {
  return required_delta(d0, d1, epsilon) <= delta + kTolerance;
}

void PrivacyAccountant::record(std::string label, PrivacyParams params) {
  params.validate();
  entries_.emplace_back(std::move(label), params);
}

ComposedParams PrivacyAccountant::total() const {
  PrivacyParams sum{0.0, 0.0};
  for (const auto& [label, p] : entries_) {
    sum.epsilon += p.epsilon;
    sum.delta += p.delta;
  }
  return ComposedParams{sum, sum.delta < 1.0};
}

}  // namespace everlast
