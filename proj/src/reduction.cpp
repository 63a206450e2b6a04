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

#include "everlast/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace everlast {

ScriptedStream::ScriptedStream(std::vector<Hypothesis> hypotheses)
    : hypotheses_(std::move(hypotheses)) {
  if (hypotheses_.empty()) {
    throw std::invalid_argument("ScriptedStream needs at least one hypothesis");
  }
}

Hypothesis ScriptedStream::next() {
  Hypothesis h = hypotheses_[position_];
  position_ = (position_ + 1) % hypotheses_.size();
  return h;
}

std::int64_t hypothesis_learner_rounds(std::int64_t domain_size, double beta) {
  Domain{domain_size}.validate();
  if (!(beta > 0.0 && beta <= 0.125)) {
    throw std::invalid_argument("hypothesis_learner_rounds: beta must lie in (0, 1/8]");
  }
  long double value = static_cast<long double>(domain_size) *
                      std::log2(static_cast<long double>(domain_size)) *
                      std::log2(1.0L / static_cast<long double>(beta));
  return static_cast<std::int64_t>(std::ceil(value));
}

LearnerOutcome hypothesis_learner(HypothesisStream& stream, const Domain& domain, double beta,
                                  UniformSource& rng) {
  domain.validate();
  if (!(beta > 0.0 && beta <= 0.125)) {
    throw std::invalid_argument("hypothesis_learner: beta must lie in (0, 1/8]");
  }
  const std::int64_t rounds = hypothesis_learner_rounds(domain.size, beta);

  // Observed labels per point, with multiplicity: the output must be a
  // uniform draw over the rounds that touched the point.
  std::vector<std::vector<std::uint8_t>> observed(static_cast<std::size_t>(domain.size));
  for (std::int64_t r = 0; r <= rounds; ++r) {
    Hypothesis h = stream.next();
    auto x = static_cast<std::int64_t>(
        uniform_below(rng, static_cast<std::uint64_t>(domain.size)));
    observed[static_cast<std::size_t>(x)].push_back(h.eval(x) ? 1 : 0);
  }

  std::vector<bool> table(static_cast<std::size_t>(domain.size), false);
  bool failed = false;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (observed[i].empty()) {
      failed = true;
      break;
    }
  }
  if (!failed) {
    for (std::size_t i = 0; i < observed.size(); ++i) {
      const auto& labels = observed[i];
      auto pick = uniform_below(rng, labels.size());
      table[i] = labels[static_cast<std::size_t>(pick)] != 0;
    }
  }
  return LearnerOutcome{Hypothesis::table(std::move(table)), failed, rounds + 1};
}

std::int64_t accuracy_boost_rounds(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("accuracy_boost_rounds: beta must lie in (0, 1)");
  }
  return static_cast<std::int64_t>(std::ceil(104.0L * std::log(1.0L / static_cast<long double>(beta))));
}

Hypothesis accuracy_boost(const std::vector<Dataset>& samples, const InterfaceFactory& factory,
                          const Domain& domain, double beta, Rng rng) {
  domain.validate();
  const std::int64_t rounds = accuracy_boost_rounds(beta);
  if (static_cast<std::int64_t>(samples.size()) != rounds) {
    throw std::invalid_argument("accuracy_boost: expected exactly " + std::to_string(rounds) +
                                " samples, got " + std::to_string(samples.size()));
  }
  if (!factory) throw std::invalid_argument("accuracy_boost: missing interface factory");

  const double learner_beta = std::min(beta, 0.125);
  std::vector<Hypothesis> extracted;
  extracted.reserve(samples.size());
  for (const auto& sample : samples) {
    Rng stream_rng = rng.split();
    std::unique_ptr<HypothesisStream> stream = factory(sample, stream_rng);
    Rng learner_rng = rng.split();
    extracted.push_back(
        hypothesis_learner(*stream, domain, learner_beta, learner_rng).hypothesis);
  }

  std::vector<bool> table(static_cast<std::size_t>(domain.size));
  for (std::int64_t x = 0; x < domain.size; ++x) {
    std::int64_t ones = 0;
    for (const auto& h : extracted) ones += h.eval(x) ? 1 : 0;
    table[static_cast<std::size_t>(x)] =
        2 * ones >= static_cast<std::int64_t>(extracted.size());
  }
  return Hypothesis::table(std::move(table));
}

}  // namespace everlast
