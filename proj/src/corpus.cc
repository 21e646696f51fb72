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

#include "relic/corpus.h"

#include <cmath>
#include <unordered_map>

#include "json.hpp"
#include "relic/error.h"

namespace relic {

using json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kPathsSchema = "relic.paths/1";
constexpr std::string_view kLabelsSchema = "relic.labels/1";

std::size_t hash_subgraph(const Subgraph& sg) {
  std::size_t h = static_cast<std::size_t>(sg.size()) * 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  const Matrix& f = sg.features();
  for (Eigen::Index i = 0; i < f.size(); ++i) mix(std::hash<double>{}(f.data()[i]));
  for (int e = 0; e < sg.edge_count(); ++e) mix(static_cast<std::size_t>(sg.neighbor(e)));
  for (int i = 0; i < sg.size(); ++i) mix(static_cast<std::size_t>(sg.end(i)));
  return h;
}

}  // namespace

std::vector<std::string> DesignCorpus::register_names() const {
  std::vector<std::string> names;
  for (const auto& r : registers) names.push_back(r.name);
  return names;
}

DesignCorpus prepare_design(const Netlist& netlist, int walk_length) {
  const CircuitGraph graph = build_graph(netlist);
  DesignCorpus corpus;
  corpus.design = netlist.name;
  corpus.walk_length = walk_length;
  for (const auto& [root, ps] : extract_all(graph, walk_length)) {
    corpus.registers.push_back({graph.name(root), ps, make_subgraph(graph, ps)});
  }
  return corpus;
}

std::string dump_paths(const DesignCorpus& corpus) {
  json doc;
  doc["schema"] = kPathsSchema;
  doc["design"] = corpus.design;
  doc["walk_length"] = corpus.walk_length;
  json regs = json::array();
  for (const auto& r : corpus.registers) {
    json entry;
    entry["name"] = r.name;
    entry["root"] = r.path.root;
    entry["levels"] = r.path.levels;
    entry["terminated_early"] = r.path.terminated_early;
    json features = json::array();
    const Matrix& f = r.subgraph.features();
    for (Eigen::Index i = 0; i < f.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index c = 0; c < f.cols(); ++c) row.push_back(f(i, c));
      features.push_back(std::move(row));
    }
    entry["features"] = std::move(features);
    entry["in_neighbors"] = r.subgraph.in_neighbors();
    regs.push_back(std::move(entry));
  }
  doc["registers"] = std::move(regs);
  return doc.dump() + "\n";
}

DesignCorpus load_paths(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("paths file: ") + e.what());
  }
  if (!doc.is_object() || doc.value("schema", "") != kPathsSchema) {
    throw InputError("paths file: expected schema '" + std::string(kPathsSchema) + "'");
  }
  DesignCorpus corpus;
  try {
    corpus.design = doc.at("design").get<std::string>();
    corpus.walk_length = doc.at("walk_length").get<int>();
    for (const auto& entry : doc.at("registers")) {
      RegisterSample r;
      r.name = entry.at("name").get<std::string>();
      r.path.root = entry.at("root").get<NodeId>();
      r.path.levels = entry.at("levels").get<std::vector<std::vector<NodeId>>>();
      r.path.terminated_early = entry.at("terminated_early").get<bool>();
      const auto& rows = entry.at("features");
      Matrix f(static_cast<Eigen::Index>(rows.size()),
               static_cast<Eigen::Index>(kFeatureWidth));
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != kFeatureWidth) {
          throw InputError("paths file: register '" + r.name + "' has feature width " +
                           std::to_string(rows[i].size()) + ", expected " +
                           std::to_string(kFeatureWidth));
        }
        for (std::size_t c = 0; c < kFeatureWidth; ++c) {
          f(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
              rows[i][c].get<double>();
        }
      }
      r.subgraph = Subgraph(std::move(f),
                            entry.at("in_neighbors").get<std::vector<std::vector<int>>>());
      if (r.path.induced_nodes().size() != static_cast<std::size_t>(r.subgraph.size())) {
        throw InputError("paths file: register '" + r.name +
                         "' levels disagree with its feature rows");
      }
      corpus.registers.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("paths file: ") + e.what());
  }
  return corpus;
}

std::vector<Subgraph> dedupe(std::span<const Subgraph> samples) {
  std::unordered_multimap<std::size_t, std::size_t> seen;
  std::vector<Subgraph> unique;
  for (const auto& sg : samples) {
    const std::size_t h = hash_subgraph(sg);
    bool duplicate = false;
    auto [lo, hi] = seen.equal_range(h);
    for (auto it = lo; it != hi && !duplicate; ++it) duplicate = unique[it->second] == sg;
    if (duplicate) continue;
    seen.emplace(h, unique.size());
    unique.push_back(sg);
  }
  return unique;
}

std::map<std::string, RegisterLabel> DesignClassification::labels() const {
  std::map<std::string, RegisterLabel> out;
  for (const auto& r : registers) out[r.name] = r.assignment.label;
  return out;
}

DesignClassification classify_design(const GateModel& model,
                                      const DesignCorpus& corpus, double t1,
                                      std::size_t t2, std::uint64_t seed) {
  std::map<RegisterId, double> embeddings;
  DesignClassification result;
  result.design = corpus.design;
  result.seed = seed;
  result.t1 = t1;
  result.t2 = t2;
  for (std::size_t i = 0; i < corpus.registers.size(); ++i) {
    const double e = embed_register(model, corpus.registers[i].subgraph);
    if (!std::isfinite(e)) {
      throw NumericalError("non-finite embedding for register '" +
                           corpus.registers[i].name + "'");
    }
    embeddings[i] = e;
    result.registers.push_back({corpus.registers[i].name, e, {}});
  }
  const Classification c = classify(embeddings, t1, t2, seed);
  for (const auto& [id, assignment] : c.labels) result.registers[id].assignment = assignment;
  return result;
}

std::string dump_labels(const DesignClassification& result) {
  json doc;
  doc["schema"] = kLabelsSchema;
  doc["design"] = result.design;
  doc["seed"] = result.seed;
  doc["t1"] = result.t1;
  doc["t2"] = result.t2;
  json regs = json::array();
  for (const auto& r : result.registers) {
    regs.push_back(json{{"name", r.name},
                        {"label", to_string(r.assignment.label)},
                        {"group", r.assignment.group},
                        {"group_size", r.assignment.group_size},
                        {"embedding", r.embedding}});
  }
  doc["registers"] = std::move(regs);
  return doc.dump(2) + "\n";
}

DesignClassification load_labels(std::string_view json_text) {
  DesignClassification result;
  try {
    const json doc = json::parse(json_text.begin(), json_text.end());
    if (doc.value("schema", "") != kLabelsSchema) {
      throw InputError("labels file: expected schema '" + std::string(kLabelsSchema) + "'");
    }
    result.design = doc.at("design").get<std::string>();
    result.seed = doc.at("seed").get<std::uint64_t>();
    result.t1 = doc.at("t1").get<double>();
    result.t2 = doc.at("t2").get<std::size_t>();
    for (const auto& r : doc.at("registers")) {
      RegisterResult rr;
      rr.name = r.at("name").get<std::string>();
      const auto label = r.at("label").get<std::string>();
      if (label != "STATE" && label != "DATA") {
        throw InputError("labels file: unknown label '" + label + "'");
      }
      rr.assignment.label = label == "STATE" ? RegisterLabel::kState : RegisterLabel::kData;
      rr.assignment.group = r.at("group").get<std::size_t>();
      rr.assignment.group_size = r.at("group_size").get<std::size_t>();
      rr.embedding = r.at("embedding").get<double>();
      result.registers.push_back(std::move(rr));
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("labels file: ") + e.what());
  }
  return result;
}

}  // namespace relic
