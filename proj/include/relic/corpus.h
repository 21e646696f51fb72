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

#ifndef RELIC_CORPUS_H_
#define RELIC_CORPUS_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relic/circuit_graph.h"
#include "relic/classifier.h"
#include "relic/gate_model.h"
#include "relic/netlist.h"

namespace relic {

// A register's path structure together with the network input built from it.
struct RegisterSample {
  std::string name;
  PathStructure path;
  Subgraph subgraph;

  bool operator==(const RegisterSample&) const = default;
};

// All registers of one design, in register id order.
struct DesignCorpus {
  std::string design;
  int walk_length = kDefaultWalkLength;
  std::vector<RegisterSample> registers;

  std::vector<std::string> register_names() const;
  bool operator==(const DesignCorpus&) const = default;
};

DesignCorpus prepare_design(const Netlist& netlist,
                            int walk_length = kDefaultWalkLength);

// Path-structure file ("relic.paths/1"): per register the root, levels and
// stop flag, plus the cone's feature rows and local in-neighbour lists.
std::string dump_paths(const DesignCorpus& corpus);
DesignCorpus load_paths(std::string_view json_text);

// Drops subgraphs identical (features and neighbourhoods) to an earlier one.
std::vector<Subgraph> dedupe(std::span<const Subgraph> samples);

struct RegisterResult {
  std::string name;
  double embedding = 0.0;
  Assignment assignment;
};

struct DesignClassification {
  std::string design;
  std::uint64_t seed = 0;
  double t1 = kDefaultT1;
  std::size_t t2 = kDefaultT2;
  std::vector<RegisterResult> registers;

  std::map<std::string, RegisterLabel> labels() const;
};

DesignClassification classify_design(const GateModel& model,
                                      const DesignCorpus& corpus, double t1,
                                      std::size_t t2, std::uint64_t seed);

// Labels file ("relic.labels/1"):
// {design, seed, t1, t2, registers: [{name, label, group, group_size, embedding}]}.
std::string dump_labels(const DesignClassification& result);
DesignClassification load_labels(std::string_view json_text);

}  // namespace relic

#endif  // RELIC_CORPUS_H_
