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

#include "relic/metrics.h"

#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "relic/error.h"

namespace relic {

using json = nlohmann::ordered_json;

std::vector<std::string> GroundTruth::state_registers() const {
  std::vector<std::string> names;
  for (const auto& [name, label] : labels) {
    if (label == RegisterLabel::kState) names.push_back(name);
  }
  return names;
}

std::string dump_ground_truth(const GroundTruth& truth) {
  json doc;
  doc["design"] = truth.design;
  doc["state_registers"] = truth.state_registers();
  return doc.dump(2) + "\n";
}

StateList parse_state_list(std::string_view json_text) {
  StateList states;
  try {
    const json doc = json::parse(json_text.begin(), json_text.end());
    states.design = doc.at("design").get<std::string>();
    for (const auto& name : doc.at("state_registers")) {
      if (!states.state_registers.insert(name.get<std::string>()).second) {
        throw InputError("ground truth lists '" + name.get<std::string>() + "' twice");
      }
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("ground truth: ") + e.what());
  }
  return states;
}

GroundTruth make_ground_truth(const StateList& states,
                              const std::vector<std::string>& register_names) {
  GroundTruth truth;
  truth.design = states.design;
  for (const auto& name : register_names) {
    const auto label = states.state_registers.contains(name) ? RegisterLabel::kState
                                                             : RegisterLabel::kData;
    if (!truth.labels.emplace(name, label).second) {
      throw InputError("duplicate register name '" + name + "'");
    }
  }
  std::string missing;
  for (const auto& name : states.state_registers) {
    if (!truth.labels.contains(name)) missing += (missing.empty() ? "" : ", ") + name;
  }
  if (!missing.empty()) {
    throw InputError("ground truth names unknown registers: " + missing);
  }
  return truth;
}

ConfusionCounts confusion(const std::map<std::string, RegisterLabel>& predicted,
                          const GroundTruth& truth) {
  std::vector<std::string> only_pred, only_truth;
  for (const auto& [name, _] : predicted) {
    if (!truth.labels.contains(name)) only_pred.push_back(name);
  }
  for (const auto& [name, _] : truth.labels) {
    if (!predicted.contains(name)) only_truth.push_back(name);
  }
  if (!only_pred.empty() || !only_truth.empty()) {
    std::string msg = "register names differ between prediction and ground truth;";
    msg += " only predicted: [";
    for (std::size_t i = 0; i < only_pred.size(); ++i) msg += (i ? ", " : "") + only_pred[i];
    msg += "]; only in truth: [";
    for (std::size_t i = 0; i < only_truth.size(); ++i) msg += (i ? ", " : "") + only_truth[i];
    throw InputError(msg + "]");
  }
  ConfusionCounts c;
  for (const auto& [name, label] : predicted) {
    const bool actual_state = truth.labels.at(name) == RegisterLabel::kState;
    const bool predicted_state = label == RegisterLabel::kState;
    if (predicted_state && actual_state) ++c.tp;
    if (predicted_state && !actual_state) ++c.fp;
    if (!predicted_state && actual_state) ++c.fn;
    if (!predicted_state && !actual_state) ++c.tn;
  }
  return c;
}

namespace {

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::optional<double> mean_of(const std::vector<std::optional<double>>& values) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& v : values) {
    if (v) {
      sum += *v;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

json ratio_json(const std::optional<double>& v) {
  return v ? json(*v) : json("undefined");
}

}  // namespace

Metrics metrics(const ConfusionCounts& c) {
  return {ratio(c.tp, c.tp + c.fn), ratio(c.tp, c.tp + c.fp),
          ratio(c.tp + c.tn, c.total())};
}

Metrics MetricsReport::average() const {
  std::vector<std::optional<double>> r, p, a;
  for (const auto& row : rows) {
    r.push_back(row.values.recall);
    p.push_back(row.values.precision);
    a.push_back(row.values.accuracy);
  }
  return {mean_of(r), mean_of(p), mean_of(a)};
}

std::string format_ratio(const std::optional<double>& value) {
  if (!value) return "undefined";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", *value);
  return buf;
}

std::string MetricsReport::to_csv() const {
  std::ostringstream out;
  out << "design,tp,tn,fp,fn,recall,precision,accuracy\n";
  for (const auto& row : rows) {
    out << row.design << ',' << row.counts.tp << ',' << row.counts.tn << ','
        << row.counts.fp << ',' << row.counts.fn << ','
        << format_ratio(row.values.recall) << ','
        << format_ratio(row.values.precision) << ','
        << format_ratio(row.values.accuracy) << '\n';
  }
  const Metrics avg = average();
  out << "average,,,,," << format_ratio(avg.recall) << ','
      << format_ratio(avg.precision) << ',' << format_ratio(avg.accuracy) << '\n';
  return out.str();
}

std::string MetricsReport::to_json() const {
  json doc;
  json rows_json = json::array();
  for (const auto& row : rows) {
    rows_json.push_back(json{{"design", row.design},
                             {"tp", row.counts.tp},
                             {"tn", row.counts.tn},
                             {"fp", row.counts.fp},
                             {"fn", row.counts.fn},
                             {"recall", ratio_json(row.values.recall)},
                             {"precision", ratio_json(row.values.precision)},
                             {"accuracy", ratio_json(row.values.accuracy)}});
  }
  doc["rows"] = std::move(rows_json);
  const Metrics avg = average();
  doc["average"] = json{{"recall", ratio_json(avg.recall)},
                        {"precision", ratio_json(avg.precision)},
                        {"accuracy", ratio_json(avg.accuracy)}};
  return doc.dump(2) + "\n";
}

}  // namespace relic
