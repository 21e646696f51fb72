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

#ifndef RELIC_NETLIST_H_
#define RELIC_NETLIST_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relic/cell_kind.h"
#include "relic/tech_library.h"
#include "relic/verilog_parser.h"

namespace relic {

using CellId = std::size_t;

struct ControlPin {
  std::string pin;
  NetId net = 0;

  bool operator==(const ControlPin&) const = default;
};

struct Cell {
  CellId id = 0;
  CellKind kind = CellKind::kBuf;
  std::string name;
  // Data inputs in library pin order. Registers have exactly one.
  std::vector<NetId> inputs;
  // Driven net; empty only for OUTPUT_PORT pseudo-cells.
  std::optional<NetId> output;
  // Clock/reset/enable connections, excluded from fan-in traversal.
  std::vector<ControlPin> controls;

  bool operator==(const Cell&) const = default;
};

struct Net {
  NetId id = 0;
  std::string name;

  bool operator==(const Net&) const = default;
};

// Technology-independent netlist. Cells are ordered: input ports, then
// instances in declaration order, then constant pseudo-cells in first-use
// order, then output ports.
class Netlist {
 public:
  std::string name;
  std::vector<Cell> cells;
  std::vector<Net> nets;
  std::vector<CellId> input_ports;
  std::vector<CellId> output_ports;

  // Driver cell of each net, or nullopt for undriven nets.
  std::vector<std::optional<CellId>> drivers() const;

  // Throws InputError when an invariant is broken (dangling net ids,
  // multiple drivers, register with != 1 data input).
  void validate() const;

  bool operator==(const Netlist&) const = default;
};

Netlist map_to_independent(const RawNetlist& raw, const TechLibrary& lib);

std::vector<CellId> registers_of(const Netlist& netlist);

// Mapped-netlist JSON dump ("relic.mapped/1").
std::string dump_netlist(const Netlist& netlist);
Netlist load_netlist(std::string_view json_text);

}  // namespace relic

#endif  // RELIC_NETLIST_H_
