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

#include "everlast/serialization.hpp"

#include <cstdio>
#include <stdexcept>

namespace everlast {
namespace {

std::string class_kind_name(ClassKind kind) {
  switch (kind) {
    case ClassKind::kThreshold: return "threshold";
    case ClassKind::kInterval: return "interval";
    case ClassKind::kPoint: return "point";
    case ClassKind::kExplicit: return "explicit";
  }
  return "";
}

std::vector<bool> bits_from_json(const nlohmann::json& j) {
  std::vector<bool> bits;
  bits.reserve(j.size());
  for (const auto& v : j) bits.push_back(v.get<int>() != 0);
  return bits;
}

nlohmann::json bits_to_json(const std::vector<bool>& bits) {
  nlohmann::json out = nlohmann::json::array();
  for (bool b : bits) out.push_back(b ? 1 : 0);
  return out;
}

}  // namespace

nlohmann::json to_json(const ConceptClass& cls) {
  nlohmann::json out;
  out["kind"] = class_kind_name(cls.kind());
  out["domain_size"] = cls.domain().size;
  if (cls.kind() == ClassKind::kExplicit) {
    nlohmann::json concepts = nlohmann::json::array();
    for (const auto& c : cls.explicit_concepts()) concepts.push_back(bits_to_json(c));
    out["concepts"] = concepts;
  }
  return out;
}

ConceptClass concept_class_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const std::int64_t n = j.at("domain_size").get<std::int64_t>();
  if (kind == "threshold") return ConceptClass::threshold(n);
  if (kind == "interval") return ConceptClass::interval(n);
  if (kind == "point") return ConceptClass::point(n);
  if (kind == "explicit") {
    std::vector<std::vector<bool>> concepts;
    for (const auto& c : j.at("concepts")) concepts.push_back(bits_from_json(c));
    return ConceptClass::explicit_class(n, std::move(concepts));
  }
  throw std::invalid_argument("concept class: unknown kind '" + kind + "'");
}

nlohmann::json to_json(const Hypothesis& h) {
  nlohmann::json out;
  out["domain_size"] = h.domain_size();
  switch (h.kind()) {
    case Hypothesis::Kind::kThreshold:
      out["kind"] = "threshold";
      break;
    case Hypothesis::Kind::kInterval:
      out["kind"] = "interval";
      break;
    case Hypothesis::Kind::kPoint:
      out["kind"] = "point";
      break;
    case Hypothesis::Kind::kTable:
      out["kind"] = "table";
      break;
  }
  out["id"] = h.id();
  out["table"] = bits_to_json(h.truth_table());
  return out;
}

Hypothesis hypothesis_from_json(const nlohmann::json& j) {
  // The table is the canonical portable form.
  return Hypothesis::table(bits_from_json(j.at("table")));
}

nlohmann::json to_json(const Dataset& data) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& ex : data) out.push_back({ex.point, ex.label});
  return out;
}

Dataset dataset_from_json(const nlohmann::json& j) {
  Dataset data;
  data.reserve(j.size());
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != 2) {
      throw std::invalid_argument("dataset: each entry must be [point, label]");
    }
    int label = row[1].get<int>();
    if (label != 0 && label != 1 && label != kUnlabeled) {
      throw std::invalid_argument("dataset: label must be 0, 1 or -1");
    }
    data.push_back({row[0].get<std::int64_t>(), label});
  }
  return data;
}

nlohmann::json to_json(const Distribution& dist) {
  nlohmann::json out;
  if (dist.is_uniform()) {
    out["kind"] = "uniform";
    out["domain_size"] = dist.domain_size();
  } else {
    out["kind"] = "explicit";
    nlohmann::json probs = nlohmann::json::array();
    for (std::int64_t x = 0; x < dist.domain_size(); ++x) probs.push_back(dist.prob(x));
    out["probs"] = probs;
  }
  return out;
}

Distribution distribution_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "uniform") return Distribution::uniform(j.at("domain_size").get<std::int64_t>());
  if (kind == "explicit") {
    return Distribution::explicit_probs(j.at("probs").get<std::vector<double>>());
  }
  throw std::invalid_argument("distribution: unknown kind '" + kind + "'");
}

nlohmann::json to_json(const PredictorConfig& config) {
  nlohmann::json out;
  out["mode"] = config.mode == PredictorMode::kPaperExact ? "paper-exact" : "scaled";
  out["alpha"] = config.alpha;
  out["beta"] = config.beta;
  out["epsilon"] = config.epsilon;
  out["delta"] = config.delta;
  out["tau"] = config.tau;
  out["query_multiplier"] = config.query_multiplier;
  out["top_budget_multiplier"] = config.top_budget_multiplier;
  out["subsample_denominator"] = config.subsample_denominator;
  out["strict_growth"] = config.strict_growth;
  out["class"] = to_json(config.concept_class);
  return out;
}

PredictorConfig predictor_config_from_json(const nlohmann::json& j) {
  PredictorConfig config;
  const std::string mode = j.value("mode", "scaled");
  if (mode == "paper-exact") {
    config.mode = PredictorMode::kPaperExact;
  } else if (mode == "scaled") {
    config.mode = PredictorMode::kScaled;
  } else {
    throw std::invalid_argument("predictor config: unknown mode '" + mode + "'");
  }
  config.alpha = j.at("alpha").get<double>();
  config.beta = j.at("beta").get<double>();
  config.epsilon = j.at("epsilon").get<double>();
  config.delta = j.at("delta").get<double>();
  config.tau = j.at("tau").get<double>();
  config.query_multiplier = j.value("query_multiplier", 25600.0);
  config.top_budget_multiplier = j.value("top_budget_multiplier", 64.0);
  config.subsample_denominator = j.value("subsample_denominator", 0.0);
  config.strict_growth = j.value("strict_growth", false);
  config.concept_class = concept_class_from_json(j.at("class"));
  config.validate();
  return config;
}

nlohmann::json to_json(const PreflightReport& report) {
  nlohmann::json out;
  out["all_pass"] = report.all_pass;
  out["warnings"] = report.warnings;
  nlohmann::json phases = nlohmann::json::array();
  for (const auto& phase : report.phases) {
    nlohmann::json p;
    p["phase"] = phase.scalars.index;
    p["alpha"] = phase.scalars.alpha;
    p["beta"] = phase.scalars.beta;
    p["sample_size"] = phase.scalars.sample_size;
    p["ensemble_size"] = phase.scalars.ensemble_size;
    p["pool_size"] = phase.scalars.pool_size;
    p["query_budget"] = phase.scalars.query_budget;
    p["top_budget"] = phase.scalars.top_budget;
    p["query_epsilon"] = phase.scalars.query_epsilon;
    p["query_delta"] = phase.scalars.query_delta;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& check : phase.checks) {
      checks.push_back({{"name", check.name},
                        {"lhs", check.lhs},
                        {"rhs", check.rhs},
                        {"pass", check.pass},
                        {"log_scale", check.log_scale}});
    }
    p["checks"] = checks;
    phases.push_back(p);
  }
  out["phases"] = phases;
  return out;
}

nlohmann::json to_json(const AccuracyReport& report) {
  nlohmann::json out;
  out["stream_length"] = report.stream_length;
  out["completion_fraction"] = report.completion_fraction;
  out["error_within_bound_fraction"] = report.error_within_bound_fraction;
  out["all_pools_exact"] = report.all_pools_exact;
  out["all_realizable"] = report.all_realizable;
  out["all_halving_exact"] = report.all_halving_exact;
  out["trials"] = report.trials.size();
  return out;
}

nlohmann::json to_json(const SmokeTestReport& report) {
  nlohmann::json out;
  out["support"] = report.support;
  out["required_delta"] = report.required_delta;
  out["slack"] = report.slack;
  out["flagged"] = report.flagged;
  out["sparse_support"] = report.sparse_support;
  out["caveat"] = report.caveat;
  return out;
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  if (header.empty()) throw std::invalid_argument("CsvWriter: empty header");
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) {
    throw std::invalid_argument("CsvWriter: row width does not match the header");
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

}  // namespace everlast
