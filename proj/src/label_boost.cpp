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

#include "everlast/label_boost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

namespace everlast {

LabelBoostResult label_boost(const Dataset& labeled, const Dataset& unlabeled,
                             const ConceptClass& cls, UniformSource& rng) {
  if (labeled.empty()) throw std::invalid_argument("label_boost: labeled part must be non-empty");
  for (const auto& ex : labeled) {
    if (ex.label != 0 && ex.label != 1) {
      throw std::invalid_argument("label_boost: labeled part contains an unlabeled example");
    }
  }
  for (const auto& ex : unlabeled) {
    if (ex.label != kUnlabeled) {
      throw std::invalid_argument("label_boost: unlabeled part contains a label");
    }
  }

  // Distinct points of the combined database, sorted.
  std::vector<std::int64_t> points;
  points.reserve(labeled.size() + unlabeled.size());
  for (const auto& ex : labeled) points.push_back(ex.point);
  for (const auto& ex : unlabeled) points.push_back(ex.point);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::vector<Dichotomy> candidates = enumerate_dichotomies(cls, points);

  std::map<std::int64_t, std::size_t> position;
  for (std::size_t i = 0; i < points.size(); ++i) position[points[i]] = i;

  // Score = -(misclassified labeled examples); replacing one example moves
  // every score by at most 1.
  std::vector<double> scores(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    std::int64_t mistakes = 0;
    for (const auto& ex : labeled) {
      if (candidates[i].labels[position[ex.point]] != static_cast<std::uint8_t>(ex.label)) {
        ++mistakes;
      }
    }
    scores[i] = -static_cast<double>(mistakes);
  }

  FiniteDistribution selection = exponential_mechanism_distribution(scores, 1.0, 1.0);
  std::size_t chosen = exponential_mechanism_sample(scores, 1.0, 1.0, rng);
  const Dichotomy& pick = candidates[chosen];

  Dataset relabeled;
  relabeled.reserve(labeled.size() + unlabeled.size());
  auto relabel = [&](const LabeledExample& ex) {
    relabeled.push_back({ex.point, pick.labels[position[ex.point]] ? 1 : 0});
  };
  for (const auto& ex : labeled) relabel(ex);
  for (const auto& ex : unlabeled) relabel(ex);

  return LabelBoostResult{std::move(relabeled),
                          pick.representative,
                          static_cast<std::int64_t>(candidates.size()),
                          chosen,
                          std::move(candidates),
                          selection};
}

LabelBoostCapacity label_boost_capacity(std::int64_t labeled_size, double alpha, double beta,
                                        int vc) {
  if (labeled_size < 1) throw std::invalid_argument("label_boost_capacity: |S| must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("label_boost_capacity: alpha and beta must lie in (0, 1)");
  }
  if (vc < 1) throw std::invalid_argument("label_boost_capacity: vc must be >= 1");
  long double value = static_cast<long double>(beta) / std::numbers::e_v<long double> * vc *
                          std::exp(static_cast<long double>(alpha) * labeled_size / (2.0L * vc)) -
                      labeled_size;
  if (!(value > 0.0L)) return {0, true};
  constexpr long double kMax = static_cast<long double>(std::numeric_limits<std::int64_t>::max());
  if (value >= kMax) return {std::numeric_limits<std::int64_t>::max(), true};
  return {static_cast<std::int64_t>(std::floor(value)), false};
}

}  // namespace everlast
