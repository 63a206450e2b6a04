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

#ifndef EVERLAST_CONCEPTS_HPP_
#define EVERLAST_CONCEPTS_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "everlast/rng.hpp"

namespace everlast {

// Finite ordered domain; points are the integers 0..size-1.
struct Domain {
  std::int64_t size = 1;

  void validate() const;
  bool contains(std::int64_t x) const { return x >= 0 && x < size; }
};

// Label values. kUnlabeled marks points whose label has not been assigned.
inline constexpr int kUnlabeled = -1;

struct LabeledExample {
  std::int64_t point = 0;
  int label = 0;  // 0, 1, or kUnlabeled

  friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

using Dataset = std::vector<LabeledExample>;

// Exact rational in [0, 1]; avoids committing empirical error rates to
// floating point.
struct Fraction {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;

  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }

  friend bool operator==(const Fraction& a, const Fraction& b) {
    return static_cast<__int128>(a.numerator) * b.denominator ==
           static_cast<__int128>(b.numerator) * a.denominator;
  }
  friend bool operator<(const Fraction& a, const Fraction& b) {
    return static_cast<__int128>(a.numerator) * b.denominator <
           static_cast<__int128>(b.numerator) * a.denominator;
  }
};

// Boolean predicate over a finite ordered domain. Total and deterministic;
// carries a canonical identifier for logging and serialization.
class Hypothesis {
 public:
  enum class Kind { kThreshold, kInterval, kPoint, kTable };

  // 1 iff x >= cut; cut in [0, domain_size] (cut == domain_size is all-zeros).
  static Hypothesis threshold(std::int64_t domain_size, std::int64_t cut);
  // 1 iff lo <= x < hi.
  static Hypothesis interval(std::int64_t domain_size, std::int64_t lo, std::int64_t hi);
  // 1 iff x == p.
  static Hypothesis single_point(std::int64_t domain_size, std::int64_t p);
  // Explicit truth table.
  static Hypothesis table(std::vector<bool> bits);

  bool eval(std::int64_t x) const;  // throws std::out_of_range off-domain
  std::int64_t domain_size() const { return domain_size_; }
  Kind kind() const { return kind_; }
  std::string id() const;

  // Full truth table; canonical comparison key across kinds.
  std::vector<bool> truth_table() const;

  friend bool operator==(const Hypothesis& a, const Hypothesis& b);

 private:
  Hypothesis(Kind kind, std::int64_t domain_size, std::int64_t a, std::int64_t b,
             std::shared_ptr<const std::vector<bool>> bits)
      : kind_(kind), domain_size_(domain_size), a_(a), b_(b), bits_(std::move(bits)) {}

  Kind kind_ = Kind::kThreshold;
  std::int64_t domain_size_ = 1;
  std::int64_t a_ = 0;
  std::int64_t b_ = 0;
  std::shared_ptr<const std::vector<bool>> bits_;
};

enum class ClassKind { kThreshold, kInterval, kPoint, kExplicit };

// A labeling of a finite point list together with one member concept
// realizing it.
struct Dichotomy {
  std::vector<std::uint8_t> labels;
  Hypothesis representative;
};

// Concept class over a finite ordered domain. Threshold/interval/point
// classes enumerate dichotomies analytically; explicit classes by brute
// force over their member list.
class ConceptClass {
 public:
  ConceptClass() : ConceptClass(threshold(1)) {}

  static ConceptClass threshold(std::int64_t domain_size);
  static ConceptClass interval(std::int64_t domain_size);
  static ConceptClass point(std::int64_t domain_size);
  static ConceptClass explicit_class(std::int64_t domain_size,
                                     std::vector<std::vector<bool>> concepts);

  const Domain& domain() const { return domain_; }
  ClassKind kind() const { return kind_; }
  int vc_dimension() const { return vc_dimension_; }
  std::int64_t size() const;  // number of distinct member predicates

  // Members of explicit classes, in list order.
  const std::vector<std::vector<bool>>& explicit_concepts() const;

 private:
  ConceptClass(ClassKind kind, Domain domain, std::vector<std::vector<bool>> concepts);

  ClassKind kind_;
  Domain domain_;
  std::vector<std::vector<bool>> concepts_;  // explicit classes only
  int vc_dimension_ = 0;
};

// Explicit probability vector over a finite domain (uniform shorthand kept
// for serialization). Supports exact disagreement mass between hypotheses.
class Distribution {
 public:
  static Distribution uniform(std::int64_t domain_size);
  static Distribution explicit_probs(std::vector<double> probs);

  std::int64_t domain_size() const { return static_cast<std::int64_t>(probs_.size()); }
  bool is_uniform() const { return uniform_; }
  double prob(std::int64_t x) const;
  std::int64_t sample(UniformSource& rng) const;

  // Exact Pr_{x~D}[a(x) != b(x)].
  double disagreement_mass(const Hypothesis& a, const Hypothesis& b) const;

 private:
  Distribution(std::vector<double> probs, bool uniform);

  std::vector<double> probs_;
  std::vector<double> cumulative_;
  bool uniform_ = false;
};

bool eval(const Hypothesis& h, std::int64_t x);

// Exact fraction of labeled examples h misclassifies. Rejects empty or
// partially labeled input.
Fraction empirical_error(const Hypothesis& h, const Dataset& examples);

// Monte Carlo estimate of Pr_{x~dist}[h(x) != c(x)] from m i.i.d. draws.
double generalization_error_mc(const Hypothesis& h, const Hypothesis& c,
                               const Distribution& dist, std::int64_t samples,
                               std::uint64_t seed);

// All labelings the class realizes on the given distinct points, one
// representative concept each, sorted by labeling vector.
std::vector<Dichotomy> enumerate_dichotomies(const ConceptClass& cls,
                                             std::span<const std::int64_t> points);

// Empirical risk minimizer over the class's dichotomies on the distinct
// points of the sample; ties break to the lexicographically smallest
// labeling vector.
Hypothesis erm(const ConceptClass& cls, const Dataset& examples);

// Sample size sufficient for PAC learning at accuracy alpha and confidence
// beta:  ceil((8*vc*log2(13/alpha) + 4*log2(2/beta)) / alpha).
std::int64_t vc_sample_size(double alpha, double beta, int vc);

}  // namespace everlast

#endif  // EVERLAST_CONCEPTS_HPP_
