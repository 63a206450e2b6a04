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

#ifndef EVERLAST_SERIALIZATION_HPP_
#define EVERLAST_SERIALIZATION_HPP_

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "everlast/concepts.hpp"
#include "everlast/harness.hpp"
#include "everlast/predictor.hpp"

namespace everlast {

// JSON shapes:
//   concept class  {"kind": "threshold"|"interval"|"point"|"explicit",
//                   "domain_size": N, "concepts": [[0,1,...], ...]}
//   hypothesis     {"kind": ..., parameters...}
//   dataset        [[point, label], ...]         label -1 encodes "unlabeled"
//   distribution   {"kind": "uniform", "domain_size": N} |
//                  {"kind": "explicit", "probs": [...]}

nlohmann::json to_json(const ConceptClass& cls);
ConceptClass concept_class_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Hypothesis& h);
Hypothesis hypothesis_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Dataset& data);
Dataset dataset_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Distribution& dist);
Distribution distribution_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PredictorConfig& config);
PredictorConfig predictor_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PreflightReport& report);
nlohmann::json to_json(const AccuracyReport& report);
nlohmann::json to_json(const SmokeTestReport& report);

// Deterministic decimal rendering used by every CSV column.
std::string format_double(double value);

// Minimal CSV emitter; one fixed header, rows appended in order.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

}  // namespace everlast

#endif  // EVERLAST_SERIALIZATION_HPP_
