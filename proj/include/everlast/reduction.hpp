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

#ifndef EVERLAST_REDUCTION_HPP_
#define EVERLAST_REDUCTION_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "everlast/concepts.hpp"
#include "everlast/rng.hpp"

namespace everlast {

// Oracle yielding one hypothesis per round; the abstraction a prediction
// interface exposes to the learner extraction below.
class HypothesisStream {
 public:
  virtual ~HypothesisStream() = default;
  virtual Hypothesis next() = 0;
};

// Stream backed by a fixed list, cycling when exhausted.
class ScriptedStream final : public HypothesisStream {
 public:
  explicit ScriptedStream(std::vector<Hypothesis> hypotheses);
  Hypothesis next() override;

 private:
  std::vector<Hypothesis> hypotheses_;
  std::size_t position_ = 0;
};

struct LearnerOutcome {
  Hypothesis hypothesis;
  bool failed = false;
  std::int64_t rounds = 0;  // stream elements consumed
};

// Rounds the extraction observes: ceil(|X| * log2|X| * log2(1/beta)).
std::int64_t hypothesis_learner_rounds(std::int64_t domain_size, double beta);

// Extracts a single hypothesis from a stream by sampling one random domain
// point per round and recording the stream hypothesis's label for it; the
// output labels each point by a uniform draw over its recorded labels (with
// multiplicity). Fails, returning an arbitrary hypothesis plus a flag, if
// some point was never sampled. Requires beta in (0, 1/8].
LearnerOutcome hypothesis_learner(HypothesisStream& stream, const Domain& domain, double beta,
                                  UniformSource& rng);

// Extraction runs used by the majority boost: ceil(104 * ln(1/beta)).
std::int64_t accuracy_boost_rounds(double beta);

using InterfaceFactory =
    std::function<std::unique_ptr<HypothesisStream>(const Dataset& sample, Rng rng)>;

// Runs the interface on each supplied sample, extracts one hypothesis per
// run, and returns the pointwise majority vote (ties resolve to label 1).
// The number of samples must equal accuracy_boost_rounds(beta).
Hypothesis accuracy_boost(const std::vector<Dataset>& samples, const InterfaceFactory& factory,
                          const Domain& domain, double beta, Rng rng);

}  // namespace everlast

#endif  // EVERLAST_REDUCTION_HPP_
