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

#include "everlast/concepts.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace everlast {
namespace {

constexpr double kProbabilityTolerance = 1e-12;

void check_point_in(const Domain& d, std::int64_t x, const char* what) {
  if (!d.contains(x)) {
    throw std::out_of_range(std::string(what) + ": point " + std::to_string(x) +
                            " outside domain of size " + std::to_string(d.size));
  }
}

std::vector<std::int64_t> sorted_distinct_points(const Dataset& examples) {
  std::vector<std::int64_t> points;
  points.reserve(examples.size());
  for (const auto& ex : examples) points.push_back(ex.point);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

}  // namespace

void Domain::validate() const {
  if (size < 1) throw std::invalid_argument("Domain size must be at least 1");
}

Hypothesis Hypothesis::threshold(std::int64_t domain_size, std::int64_t cut) {
  Domain{domain_size}.validate();
  if (cut < 0 || cut > domain_size) {
    throw std::invalid_argument("threshold cut must lie in [0, domain_size]");
  }
  return Hypothesis(Kind::kThreshold, domain_size, cut, 0, nullptr);
}

Hypothesis Hypothesis::interval(std::int64_t domain_size, std::int64_t lo, std::int64_t hi) {
  Domain{domain_size}.validate();
  if (lo < 0 || hi < lo || hi > domain_size) {
    throw std::invalid_argument("interval bounds must satisfy 0 <= lo <= hi <= domain_size");
  }
  return Hypothesis(Kind::kInterval, domain_size, lo, hi, nullptr);
}

Hypothesis Hypothesis::single_point(std::int64_t domain_size, std::int64_t p) {
  Domain domain{domain_size};
  domain.validate();
  check_point_in(domain, p, "single_point");
  return Hypothesis(Kind::kPoint, domain_size, p, 0, nullptr);
}

Hypothesis Hypothesis::table(std::vector<bool> bits) {
  if (bits.empty()) throw std::invalid_argument("table hypothesis needs a non-empty table");
  auto size = static_cast<std::int64_t>(bits.size());
  return Hypothesis(Kind::kTable, size, 0, 0,
                    std::make_shared<const std::vector<bool>>(std::move(bits)));
}

bool Hypothesis::eval(std::int64_t x) const {
  check_point_in(Domain{domain_size_}, x, "eval");
  switch (kind_) {
    case Kind::kThreshold:
      return x >= a_;
    case Kind::kInterval:
      return x >= a_ && x < b_;
    case Kind::kPoint:
      return x == a_;
    case Kind::kTable:
      return (*bits_)[static_cast<std::size_t>(x)];
  }
  return false;
}

std::string Hypothesis::id() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::kThreshold:
      out << "threshold(" << a_ << ")";
      break;
    case Kind::kInterval:
      out << "interval(" << a_ << "," << b_ << ")";
      break;
    case Kind::kPoint:
      out << "point(" << a_ << ")";
      break;
    case Kind::kTable:
      out << "table(";
      for (bool b : *bits_) out << (b ? '1' : '0');
      out << ")";
      break;
  }
  return out.str();
}

std::vector<bool> Hypothesis::truth_table() const {
  std::vector<bool> t(static_cast<std::size_t>(domain_size_));
  for (std::int64_t x = 0; x < domain_size_; ++x) t[static_cast<std::size_t>(x)] = eval(x);
  return t;
}

bool operator==(const Hypothesis& a, const Hypothesis& b) {
  if (a.domain_size_ != b.domain_size_) return false;
  return a.truth_table() == b.truth_table();
}

bool eval(const Hypothesis& h, std::int64_t x) { return h.eval(x); }

ConceptClass::ConceptClass(ClassKind kind, Domain domain,
                           std::vector<std::vector<bool>> concepts)
    : kind_(kind), domain_(domain), concepts_(std::move(concepts)) {
  domain_.validate();
  const std::int64_t n = domain_.size;
  switch (kind_) {
    case ClassKind::kThreshold:
      vc_dimension_ = 1;
      break;
    case ClassKind::kInterval:
      vc_dimension_ = n >= 2 ? 2 : 1;
      break;
    case ClassKind::kPoint:
      vc_dimension_ = n >= 2 ? 1 : 0;
      break;
    case ClassKind::kExplicit: {
      if (concepts_.empty()) {
        throw std::invalid_argument("explicit concept class needs at least one concept");
      }
      for (const auto& c : concepts_) {
        if (static_cast<std::int64_t>(c.size()) != n) {
          throw std::invalid_argument("explicit concept length must match domain size");
        }
      }
      // Brute-force VC: largest k with some k-subset fully shattered.
      int vc = 0;
      std::vector<std::int64_t> subset;
      auto shattered = [&](const std::vector<std::int64_t>& pts) {
        std::set<std::vector<bool>> seen;
        for (const auto& c : concepts_) {
          std::vector<bool> lab;
          lab.reserve(pts.size());
          for (auto p : pts) lab.push_back(c[static_cast<std::size_t>(p)]);
          seen.insert(std::move(lab));
        }
        return seen.size() == (std::size_t{1} << pts.size());
      };
      // VC is at most log2(|C|); domain sizes for explicit classes stay small.
      int max_k = 0;
      while ((std::size_t{1} << (max_k + 1)) <= concepts_.size() && max_k + 1 <= n) ++max_k;
      std::vector<std::int64_t> pts;
      std::function<bool(int, std::int64_t, int)> search =
          [&](int k, std::int64_t start, int depth) -> bool {
        if (depth == k) return shattered(pts);
        for (std::int64_t p = start; p < n; ++p) {
          pts.push_back(p);
          if (search(k, p + 1, depth + 1)) {
            pts.pop_back();
            return true;
          }
          pts.pop_back();
        }
        return false;
      };
      for (int k = 1; k <= max_k; ++k) {
        if (search(k, 0, 0)) vc = k;
      }
      vc_dimension_ = vc;
      break;
    }
  }
}

ConceptClass ConceptClass::threshold(std::int64_t domain_size) {
  return ConceptClass(ClassKind::kThreshold, Domain{domain_size}, {});
}

ConceptClass ConceptClass::interval(std::int64_t domain_size) {
  return ConceptClass(ClassKind::kInterval, Domain{domain_size}, {});
}

ConceptClass ConceptClass::point(std::int64_t domain_size) {
  return ConceptClass(ClassKind::kPoint, Domain{domain_size}, {});
}

ConceptClass ConceptClass::explicit_class(std::int64_t domain_size,
                                          std::vector<std::vector<bool>> concepts) {
  return ConceptClass(ClassKind::kExplicit, Domain{domain_size}, std::move(concepts));
}

std::int64_t ConceptClass::size() const {
  const std::int64_t n = domain_.size;
  switch (kind_) {
    case ClassKind::kThreshold:
      return n + 1;
    case ClassKind::kInterval:
      return n * (n + 1) / 2 + 1;
    case ClassKind::kPoint:
      return n;
    case ClassKind::kExplicit:
      return static_cast<std::int64_t>(concepts_.size());
  }
  return 0;
}

const std::vector<std::vector<bool>>& ConceptClass::explicit_concepts() const {
  if (kind_ != ClassKind::kExplicit) {
    throw std::logic_error("explicit_concepts() on a non-explicit class");
  }
  return concepts_;
}

Distribution::Distribution(std::vector<double> probs, bool uniform)
    : probs_(std::move(probs)), uniform_(uniform) {
  if (probs_.empty()) throw std::invalid_argument("Distribution needs a non-empty support");
  double sum = 0.0;
  for (double p : probs_) {
    if (p < 0.0) throw std::invalid_argument("Distribution probabilities must be non-negative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    throw std::invalid_argument("Distribution probabilities must sum to 1");
  }
  cumulative_.resize(probs_.size());
  std::partial_sum(probs_.begin(), probs_.end(), cumulative_.begin());
  cumulative_.back() = 1.0;
}

Distribution Distribution::uniform(std::int64_t domain_size) {
  Domain{domain_size}.validate();
  std::vector<double> probs(static_cast<std::size_t>(domain_size),
                            1.0 / static_cast<double>(domain_size));
  return Distribution(std::move(probs), true);
}

Distribution Distribution::explicit_probs(std::vector<double> probs) {
  return Distribution(std::move(probs), false);
}

double Distribution::prob(std::int64_t x) const {
  check_point_in(Domain{domain_size()}, x, "Distribution::prob");
  return probs_[static_cast<std::size_t>(x)];
}

std::int64_t Distribution::sample(UniformSource& rng) const {
  double u = rng.next_uniform();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  return static_cast<std::int64_t>(it - cumulative_.begin());
}

double Distribution::disagreement_mass(const Hypothesis& a, const Hypothesis& b) const {
  double mass = 0.0;
  for (std::int64_t x = 0; x < domain_size(); ++x) {
    if (a.eval(x) != b.eval(x)) mass += probs_[static_cast<std::size_t>(x)];
  }
  return mass;
}

Fraction empirical_error(const Hypothesis& h, const Dataset& examples) {
  if (examples.empty()) throw std::invalid_argument("empirical_error: empty dataset");
  std::int64_t mistakes = 0;
  for (const auto& ex : examples) {
    if (ex.label != 0 && ex.label != 1) {
      throw std::invalid_argument("empirical_error: dataset contains an unlabeled example");
    }
    if (static_cast<int>(h.eval(ex.point)) != ex.label) ++mistakes;
  }
  return Fraction{mistakes, static_cast<std::int64_t>(examples.size())};
}

double generalization_error_mc(const Hypothesis& h, const Hypothesis& c,
                               const Distribution& dist, std::int64_t samples,
                               std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("generalization_error_mc: samples must be >= 1");
  Rng rng(seed);
  std::int64_t disagreements = 0;
  for (std::int64_t i = 0; i < samples; ++i) {
    std::int64_t x = dist.sample(rng);
    if (h.eval(x) != c.eval(x)) ++disagreements;
  }
  return static_cast<double>(disagreements) / static_cast<double>(samples);
}

namespace {

struct SortedView {
  std::vector<std::int64_t> sorted_points;
  std::vector<std::size_t> input_position;  // sorted index -> input index
};

SortedView sort_points(std::span<const std::int64_t> points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  SortedView view;
  view.sorted_points.reserve(points.size());
  view.input_position = order;
  for (std::size_t i : order) view.sorted_points.push_back(points[i]);
  for (std::size_t i = 1; i < view.sorted_points.size(); ++i) {
    if (view.sorted_points[i] == view.sorted_points[i - 1]) {
      throw std::invalid_argument("enumerate_dichotomies: duplicate point");
    }
  }
  return view;
}

// Scatter a labeling given in sorted order back to the input point order.
std::vector<std::uint8_t> to_input_order(const SortedView& view,
                                         const std::vector<std::uint8_t>& sorted_labels) {
  std::vector<std::uint8_t> labels(sorted_labels.size());
  for (std::size_t i = 0; i < sorted_labels.size(); ++i) {
    labels[view.input_position[i]] = sorted_labels[i];
  }
  return labels;
}

}  // namespace

std::vector<Dichotomy> enumerate_dichotomies(const ConceptClass& cls,
                                             std::span<const std::int64_t> points) {
  if (points.empty()) throw std::invalid_argument("enumerate_dichotomies: empty point list");
  const Domain& domain = cls.domain();
  for (auto p : points) check_point_in(domain, p, "enumerate_dichotomies");

  std::vector<Dichotomy> result;
  const std::size_t k = points.size();

  switch (cls.kind()) {
    case ClassKind::kThreshold: {
      SortedView view = sort_points(points);
      for (std::size_t j = 0; j <= k; ++j) {
        // Ones at sorted positions j..k-1.
        std::vector<std::uint8_t> sorted_labels(k, 0);
        for (std::size_t i = j; i < k; ++i) sorted_labels[i] = 1;
        std::int64_t cut = (j == 0) ? 0 : view.sorted_points[j - 1] + 1;
        result.push_back(Dichotomy{to_input_order(view, sorted_labels),
                                   Hypothesis::threshold(domain.size, cut)});
      }
      break;
    }
    case ClassKind::kInterval: {
      SortedView view = sort_points(points);
      result.push_back(Dichotomy{std::vector<std::uint8_t>(k, 0),
                                 Hypothesis::interval(domain.size, 0, 0)});
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j <= k; ++j) {
          // Ones at sorted positions i..j-1.
          std::vector<std::uint8_t> sorted_labels(k, 0);
          for (std::size_t t = i; t < j; ++t) sorted_labels[t] = 1;
          std::int64_t lo = view.sorted_points[i];
          std::int64_t hi = view.sorted_points[j - 1] + 1;
          result.push_back(Dichotomy{to_input_order(view, sorted_labels),
                                     Hypothesis::interval(domain.size, lo, hi)});
        }
      }
      break;
    }
    case ClassKind::kPoint: {
      SortedView view = sort_points(points);
      for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::uint8_t> labels(k, 0);
        labels[i] = 1;
        result.push_back(Dichotomy{labels, Hypothesis::single_point(domain.size, points[i])});
      }
      if (static_cast<std::int64_t>(k) < domain.size) {
        // All-zeros, realized by the point concept of any uncovered point.
        std::int64_t q = 0;
        for (auto p : view.sorted_points) {
          if (p == q) ++q; else break;
        }
        result.push_back(Dichotomy{std::vector<std::uint8_t>(k, 0),
                                   Hypothesis::single_point(domain.size, q)});
      }
      break;
    }
    case ClassKind::kExplicit: {
      sort_points(points);  // duplicate check
      std::map<std::vector<std::uint8_t>, Hypothesis> seen;
      for (const auto& c : cls.explicit_concepts()) {
        std::vector<std::uint8_t> labels(k);
        for (std::size_t i = 0; i < k; ++i) {
          labels[i] = c[static_cast<std::size_t>(points[i])] ? 1 : 0;
        }
        seen.emplace(std::move(labels), Hypothesis::table(c));
      }
      for (auto& [labels, rep] : seen) result.push_back(Dichotomy{labels, rep});
      break;
    }
  }

  std::sort(result.begin(), result.end(),
            [](const Dichotomy& a, const Dichotomy& b) { return a.labels < b.labels; });
  return result;
}

Hypothesis erm(const ConceptClass& cls, const Dataset& examples) {
  if (examples.empty()) throw std::invalid_argument("erm: empty dataset");
  std::vector<std::int64_t> points = sorted_distinct_points(examples);
  std::vector<Dichotomy> dichotomies = enumerate_dichotomies(cls, points);

  std::map<std::int64_t, std::size_t> position;
  for (std::size_t i = 0; i < points.size(); ++i) position[points[i]] = i;

  const Dichotomy* best = nullptr;
  std::int64_t best_mistakes = 0;
  for (const auto& d : dichotomies) {
    std::int64_t mistakes = 0;
    for (const auto& ex : examples) {
      if (ex.label != 0 && ex.label != 1) {
        throw std::invalid_argument("erm: dataset contains an unlabeled example");
      }
      if (d.labels[position[ex.point]] != static_cast<std::uint8_t>(ex.label)) ++mistakes;
    }
    // Dichotomies arrive sorted by labeling vector, so the first strict
    // minimum realizes the lexicographic tie-break.
    if (best == nullptr || mistakes < best_mistakes) {
      best = &d;
      best_mistakes = mistakes;
    }
  }
  return best->representative;
}

std::int64_t vc_sample_size(double alpha, double beta, int vc) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("vc_sample_size: alpha and beta must lie in (0, 1)");
  }
  if (vc < 1) throw std::invalid_argument("vc_sample_size: vc must be >= 1");
  long double value =
      (8.0L * vc * std::log2(13.0L / alpha) + 4.0L * std::log2(2.0L / beta)) / alpha;
  return static_cast<std::int64_t>(std::ceil(value));
}

}  // namespace everlast
