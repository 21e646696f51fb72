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

#include "relic/circuit_graph.h"

#include <algorithm>
#include <unordered_set>

#include "json.hpp"
#include "relic/error.h"

namespace relic {

using json = nlohmann::ordered_json;

bool CircuitGraph::has_edge(NodeId from, NodeId to) const {
  const auto& p = preds_.at(to);
  return std::find(p.begin(), p.end(), from) != p.end();
}

std::vector<NodeId> CircuitGraph::registers() const {
  std::vector<NodeId> ids;
  for (NodeId n = 0; n < size(); ++n) {
    if (relic::is_register(kinds_[n])) ids.push_back(n);
  }
  return ids;
}

const FeatureVector& CircuitGraph::feature(NodeId n) const {
  if (n >= features_.size()) {
    throw InputError("unknown node id " + std::to_string(n));
  }
  return features_[n];
}

void CircuitGraph::finalize() {
  const std::size_t n = kinds_.size();
  succs_.assign(n, {});
  edge_count_ = 0;
  for (NodeId dst = 0; dst < n; ++dst) {
    for (NodeId src : preds_[dst]) {
      succs_[src].push_back(dst);
      ++edge_count_;
    }
  }
  features_.assign(n, {});
  for (NodeId v = 0; v < n; ++v) {
    auto& f = features_[v].values;
    f[one_hot_index(kinds_[v])] = 1.0;
    f[kNumCellKinds] = static_cast<double>(preds_[v].size());
    f[kNumCellKinds + 1] = static_cast<double>(succs_[v].size());
  }
}

namespace {

void add_unique(std::vector<NodeId>& list, NodeId id) {
  if (std::find(list.begin(), list.end(), id) == list.end()) list.push_back(id);
}

}  // namespace

CircuitGraph build_graph(const Netlist& netlist) {
  CircuitGraph g;
  const auto drivers = netlist.drivers();
  g.kinds_.reserve(netlist.cells.size());
  g.preds_.resize(netlist.cells.size());
  for (const auto& cell : netlist.cells) {
    g.kinds_.push_back(cell.kind);
    g.names_.push_back(cell.name);
    for (NetId net : cell.inputs) {
      if (auto driver = drivers.at(net)) add_unique(g.preds_[cell.id], *driver);
    }
  }
  g.finalize();
  return g;
}

CircuitGraph graph_from_edges(const std::vector<CellKind>& kinds,
                              const std::vector<std::pair<NodeId, NodeId>>& edges) {
  CircuitGraph g;
  g.kinds_ = kinds;
  g.preds_.resize(kinds.size());
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    g.names_.push_back("n" + std::to_string(i));
  }
  for (const auto& [src, dst] : edges) {
    if (src >= kinds.size() || dst >= kinds.size()) {
      throw InputError("edge endpoint out of range");
    }
    add_unique(g.preds_[dst], src);
  }
  g.finalize();
  return g;
}

FeatureVector node_feature(const CircuitGraph& graph, NodeId node) {
  return graph.feature(node);
}

std::vector<NodeId> PathStructure::induced_nodes() const {
  std::vector<NodeId> nodes;
  for (const auto& level : levels) nodes.insert(nodes.end(), level.begin(), level.end());
  return nodes;
}

std::vector<std::pair<NodeId, NodeId>> PathStructure::induced_edges(
    const CircuitGraph& graph) const {
  const auto nodes = induced_nodes();
  std::unordered_set<NodeId> members(nodes.begin(), nodes.end());
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId dst : nodes) {
    for (NodeId src : graph.predecessors(dst)) {
      if (members.contains(src)) edges.emplace_back(src, dst);
    }
  }
  return edges;
}

PathStructure extract_path_structure(const CircuitGraph& graph, NodeId start,
                                     int walk_length) {
  if (start >= graph.size()) {
    throw InputError("start node " + std::to_string(start) + " is not in the graph");
  }
  if (!graph.is_register(start)) {
    throw InputError("start node '" + graph.name(start) + "' is not a register");
  }
  if (walk_length < 1) throw InputError("walk length must be at least 1");

  PathStructure ps;
  ps.root = start;
  ps.levels.push_back({start});
  std::unordered_set<NodeId> visited{start};
  for (int depth = 0; depth < walk_length; ++depth) {
    bool quiet = false;
    std::vector<NodeId> frontier;
    for (NodeId node : ps.levels.back()) {
      for (NodeId pred : graph.predecessors(node)) {
        if (pred == start || graph.is_register(pred)) quiet = true;
        if (visited.insert(pred).second) frontier.push_back(pred);
      }
    }
    if (!frontier.empty()) ps.levels.push_back(std::move(frontier));
    if (quiet) {
      ps.terminated_early = true;
      break;
    }
    if (ps.levels.size() <= static_cast<std::size_t>(depth) + 1) break;
  }
  return ps;
}

std::map<NodeId, PathStructure> extract_all(const CircuitGraph& graph,
                                            int walk_length) {
  std::map<NodeId, PathStructure> result;
  for (NodeId reg : graph.registers()) {
    result.emplace(reg, extract_path_structure(graph, reg, walk_length));
  }
  return result;
}

std::string dump_graph(const CircuitGraph& graph) {
  json doc;
  doc["schema"] = "relic.graph/1";
  json nodes = json::array();
  for (NodeId n = 0; n < graph.size(); ++n) {
    nodes.push_back(json{{"id", n},
                         {"kind", std::string(to_string(graph.kind(n)))},
                         {"feature", graph.feature(n).values}});
  }
  doc["nodes"] = std::move(nodes);
  json edges = json::array();
  for (NodeId dst = 0; dst < graph.size(); ++dst) {
    for (NodeId src : graph.predecessors(dst)) edges.push_back(json::array({src, dst}));
  }
  doc["edges"] = std::move(edges);
  return doc.dump() + "\n";
}

}  // namespace relic
