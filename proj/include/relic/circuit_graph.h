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

#ifndef RELIC_CIRCUIT_GRAPH_H_
#define RELIC_CIRCUIT_GRAPH_H_

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "relic/cell_kind.h"
#include "relic/netlist.h"

namespace relic {

using NodeId = std::size_t;

inline constexpr std::size_t kFeatureWidth = kNumCellKinds + 2;

// One-hot cell kind followed by raw in-degree and out-degree.
struct FeatureVector {
  std::array<double, kFeatureWidth> values{};

  double in_degree() const { return values[kNumCellKinds]; }
  double out_degree() const { return values[kNumCellKinds + 1]; }

  bool operator==(const FeatureVector&) const = default;
};

// Directed data-dependency graph. Node ids equal netlist cell ids; an edge
// (i, j) means cell i drives a data input of cell j. Parallel edges are
// collapsed. Predecessors keep data-pin order.
class CircuitGraph {
 public:
  CircuitGraph() = default;

  std::size_t size() const { return kinds_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  CellKind kind(NodeId n) const { return kinds_.at(n); }
  bool is_register(NodeId n) const { return relic::is_register(kind(n)); }
  const std::string& name(NodeId n) const { return names_.at(n); }
  const std::vector<NodeId>& predecessors(NodeId n) const { return preds_.at(n); }
  const std::vector<NodeId>& successors(NodeId n) const { return succs_.at(n); }
  bool has_edge(NodeId from, NodeId to) const;

  // Node ids of register kinds, ascending.
  std::vector<NodeId> registers() const;

  // Throws InputError for an unknown node id.
  const FeatureVector& feature(NodeId n) const;

  bool operator==(const CircuitGraph&) const = default;

 private:
  friend CircuitGraph build_graph(const Netlist& netlist);
  friend CircuitGraph graph_from_edges(
      const std::vector<CellKind>& kinds,
      const std::vector<std::pair<NodeId, NodeId>>& edges);

  void finalize();

  std::vector<CellKind> kinds_;
  std::vector<std::string> names_;
  std::vector<std::vector<NodeId>> preds_;
  std::vector<std::vector<NodeId>> succs_;
  std::vector<FeatureVector> features_;
  std::size_t edge_count_ = 0;
};

CircuitGraph build_graph(const Netlist& netlist);

// Builds a graph directly from kinds and (src, dst) edges; duplicate edges
// are dropped. Intended for synthetic graphs and tests.
CircuitGraph graph_from_edges(const std::vector<CellKind>& kinds,
                              const std::vector<std::pair<NodeId, NodeId>>& edges);

FeatureVector node_feature(const CircuitGraph& graph, NodeId node);

inline constexpr int kDefaultWalkLength = 6;

// Fan-in cone of one register as found by level-wise backward search.
struct PathStructure {
  NodeId root = 0;
  // levels[0] == {root}; each node appears once, at its minimum depth.
  std::vector<std::vector<NodeId>> levels;
  bool terminated_early = false;

  std::size_t depth() const { return levels.empty() ? 0 : levels.size() - 1; }
  // Concatenation of the levels (root first).
  std::vector<NodeId> induced_nodes() const;
  // Graph edges with both endpoints in the cone, as (src, dst) pairs.
  std::vector<std::pair<NodeId, NodeId>> induced_edges(
      const CircuitGraph& graph) const;

  bool operator==(const PathStructure&) const = default;
};

// Backward breadth-first search from `start`, at most `walk_length` levels.
// After a level is expanded, the search stops if any predecessor seen while
// expanding it was the start node or a register; the register found is kept
// in that last level.
PathStructure extract_path_structure(const CircuitGraph& graph, NodeId start,
                                     int walk_length = kDefaultWalkLength);

std::map<NodeId, PathStructure> extract_all(const CircuitGraph& graph,
                                            int walk_length = kDefaultWalkLength);

// JSON dumps ("relic.graph/1"). Path structure dumps are produced by the
// corpus module together with the features the network consumes.
std::string dump_graph(const CircuitGraph& graph);

}  // namespace relic

#endif  // RELIC_CIRCUIT_GRAPH_H_
