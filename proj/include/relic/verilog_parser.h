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

#ifndef RELIC_VERILOG_PARSER_H_
#define RELIC_VERILOG_PARSER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace relic {

using NetId = std::size_t;

// A pin binding inside an instance. Either a net reference or a constant
// literal (1'b0 / 1'b1); `net` is meaningless for constants.
struct PinBinding {
  enum class Kind { kNet, kConst0, kConst1, kOpen };

  std::string pin;
  Kind kind = Kind::kNet;
  NetId net = 0;

  bool operator==(const PinBinding&) const = default;
};

struct RawInstance {
  std::string cell_type;  // library cell name, unresolved
  std::string name;
  std::vector<PinBinding> pins;
  int line = 0;

  bool operator==(const RawInstance&) const = default;
};

// Structural netlist exactly as written, before library mapping. Net ids
// are assigned in declaration order, one per scalar bit ("a" or "a[3]").
struct RawNetlist {
  std::string name;
  std::vector<std::string> nets;
  std::vector<NetId> inputs;
  std::vector<NetId> outputs;
  std::vector<RawInstance> instances;

  bool operator==(const RawNetlist&) const = default;
};

// Parses the flat structural Verilog subset: a single module with
// input/output/wire declarations (optionally ranged), named-port instances,
// bit-selects and 1-bit constant literals. Anything else is a syntax error
// carrying "line:column".
RawNetlist parse_netlist(std::string_view text);

}  // namespace relic

#endif  // RELIC_VERILOG_PARSER_H_
