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

#ifndef EVERLAST_LABEL_BOOST_HPP_
#define EVERLAST_LABEL_BOOST_HPP_

#include <cstdint>
#include <vector>

#include "everlast/concepts.hpp"
#include "everlast/dp_core.hpp"
#include "everlast/rng.hpp"

namespace everlast {

struct LabelBoostResult {
  Dataset relabeled;                  // |labeled| + |unlabeled| examples, labels = h(x)
  Hypothesis hypothesis;              // chosen relabeling hypothesis
  std::int64_t hypothesis_count = 0;  // |H|
  std::size_t chosen_index = 0;       // index into hypotheses
  std::vector<Dichotomy> hypotheses;  // candidate set, one per realized dichotomy
  FiniteDistribution selection;       // exact selection distribution over hypotheses
};

// Relabels a partially labeled database with a hypothesis drawn by the
// exponential mechanism (epsilon = 1, sensitivity 1) over the dichotomies
// the class realizes on the database's distinct points; scores count the
// labeled examples a candidate misclassifies. The output is realizable by
// construction.
LabelBoostResult label_boost(const Dataset& labeled, const Dataset& unlabeled,
                             const ConceptClass& cls, UniformSource& rng);

struct LabelBoostCapacity {
  std::int64_t max_unlabeled = 0;
  bool clamped = false;  // formula came out negative (or overflowed)
};

// Largest unlabeled count the utility guarantee tolerates:
// floor((beta/e) vc exp(alpha |S| / (2 vc)) - |S|), clamped below at 0.
LabelBoostCapacity label_boost_capacity(std::int64_t labeled_size, double alpha, double beta,
                                        int vc);

}  // namespace everlast

#endif  // EVERLAST_LABEL_BOOST_HPP_
