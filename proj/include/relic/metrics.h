// Copyright 2026 The Relic Authors
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

#ifndef RELIC_METRICS_H_
#define RELIC_METRICS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "relic/classifier.h"

namespace relic {

// Reference labels of one design. State registers are the positive class.
struct GroundTruth {
  std::string design;
  std::map<std::string, RegisterLabel> labels;

  std::vector<std::string> state_registers() const;
  bool operator==(const GroundTruth&) const = default;
};

// Ground-truth file: {"design": "...", "state_registers": ["..."]}.
std::string dump_ground_truth(const GroundTruth& truth);

struct StateList {
  std::string design;
  std::set<std::string> state_registers;
};
StateList parse_state_list(std::string_view json_text);

// Completes a state list into full labels over `register_names`; listed
// names missing from `register_names` are an error.
GroundTruth make_ground_truth(const StateList& states,
                              const std::vector<std::string>& register_names);

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + tn + fp + fn; }
  bool operator==(const ConfusionCounts&) const = default;
};

// Throws InputError listing the symmetric difference when the predicted and
// reference register names differ.
ConfusionCounts confusion(const std::map<std::string, RegisterLabel>& predicted,
                          const GroundTruth& truth);

// A ratio with a zero denominator is undefined, never 0.
struct Metrics {
  std::optional<double> recall;
  std::optional<double> precision;
  std::optional<double> accuracy;
};

Metrics metrics(const ConfusionCounts& c);

struct MetricsRow {
  std::string design;
  ConfusionCounts counts;
  Metrics values;
};

// Per-design rows plus the macro average over defined values.
struct MetricsReport {
  std::vector<MetricsRow> rows;

  Metrics average() const;
  std::string to_csv() const;
  std::string to_json() const;
};

std::string format_ratio(const std::optional<double>& value);

}  // namespace relic

#endif  // RELIC_METRICS_H_
