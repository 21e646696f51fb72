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

#include "relic/netlist.h"

#include <algorithm>
#include <map>

#include "json.hpp"
#include "relic/error.h"

namespace relic {

using json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kMappedSchema = "relic.mapped/1";

std::string where(const RawInstance& inst) {
  return "instance '" + inst.name + "' (line " + std::to_string(inst.line) + ")";
}

}  // namespace

std::vector<std::optional<CellId>> Netlist::drivers() const {
  std::vector<std::optional<CellId>> result(nets.size());
  for (const auto& cell : cells) {
    if (cell.output && *cell.output < result.size()) {
      result[*cell.output] = cell.id;
    }
  }
  return result;
}

void Netlist::validate() const {
  std::vector<std::optional<CellId>> driver(nets.size());
  for (std::size_t i = 0; i < nets.size(); ++i) {
    if (nets[i].id != i) throw InputError("net ids must be dense and ordered");
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& cell = cells[i];
    if (cell.id != i) throw InputError("cell ids must be dense and ordered");
    for (NetId net : cell.inputs) {
      if (net >= nets.size()) {
        throw InputError("cell '" + cell.name + "' reads unknown net id " +
                         std::to_string(net));
      }
    }
    for (const auto& control : cell.controls) {
      if (control.net >= nets.size()) {
        throw InputError("cell '" + cell.name + "' control pin '" +
                         control.pin + "' reads unknown net id");
      }
    }
    if (is_register(cell.kind) && cell.inputs.size() != 1) {
      throw InputError("register '" + cell.name +
                       "' must have exactly one data input");
    }
    if (cell.kind == CellKind::kOutputPort) {
      if (cell.output) throw InputError("output port '" + cell.name + "' drives a net");
      continue;
    }
    if (!cell.output || *cell.output >= nets.size()) {
      throw InputError("cell '" + cell.name + "' lacks a valid output net");
    }
    auto& slot = driver[*cell.output];
    if (slot) {
      throw InputError("net '" + nets[*cell.output].name +
                       "' has multiple drivers: '" + cells[*slot].name +
                       "' and '" + cell.name + "'");
    }
    slot = cell.id;
  }
}

Netlist map_to_independent(const RawNetlist& raw, const TechLibrary& lib) {
  Netlist out;
  out.name = raw.name;
  for (NetId i = 0; i < raw.nets.size(); ++i) out.nets.push_back({i, raw.nets[i]});

  auto add_cell = [&out](CellKind kind, std::string name) -> Cell& {
    Cell cell;
    cell.id = out.cells.size();
    cell.kind = kind;
    cell.name = std::move(name);
    out.cells.push_back(std::move(cell));
    return out.cells.back();
  };

  for (NetId net : raw.inputs) {
    Cell& cell = add_cell(CellKind::kInputPort, raw.nets[net]);
    cell.output = net;
    out.input_ports.push_back(cell.id);
  }

  // Constant nets are created on first use; their pseudo-cells are appended
  // after all instances so instance ids stay in declaration order.
  std::optional<NetId> const_net[2];
  auto constant = [&](bool one) {
    auto& slot = const_net[one ? 1 : 0];
    if (!slot) {
      slot = out.nets.size();
      out.nets.push_back({*slot, one ? "1'b1" : "1'b0"});
    }
    return *slot;
  };

  for (const auto& inst : raw.instances) {
    const LibraryCell* lc = lib.find(inst.cell_type);
    if (lc == nullptr) {
      throw InputError("unmapped cell '" + inst.cell_type + "' used by " +
                       where(inst));
    }
    std::vector<std::optional<NetId>> inputs(lc->inputs.size());
    std::optional<NetId> output;
    std::vector<ControlPin> controls;
    const auto control_pins = lc->control_pins();
    for (const auto& binding : inst.pins) {
      std::optional<NetId> net;
      switch (binding.kind) {
        case PinBinding::Kind::kNet:
          net = binding.net;
          break;
        case PinBinding::Kind::kConst0:
          net = constant(false);
          break;
        case PinBinding::Kind::kConst1:
          net = constant(true);
          break;
        case PinBinding::Kind::kOpen:
          break;
      }
      if (binding.pin == lc->output) {
        if (binding.kind == PinBinding::Kind::kConst0 ||
            binding.kind == PinBinding::Kind::kConst1) {
          throw InputError("output pin '" + binding.pin +
                           "' tied to a constant in " + where(inst));
        }
        output = net;
        continue;
      }
      auto it = std::find(lc->inputs.begin(), lc->inputs.end(), binding.pin);
      if (it != lc->inputs.end()) {
        inputs[static_cast<std::size_t>(it - lc->inputs.begin())] = net;
        continue;
      }
      if (std::find(control_pins.begin(), control_pins.end(), binding.pin) !=
          control_pins.end()) {
        if (net) controls.push_back({binding.pin, *net});
        continue;
      }
      throw InputError("pin '" + binding.pin + "' is not defined for cell '" +
                       inst.cell_type + "' in " + where(inst) +
                       " (multi-output cells are not supported)");
    }
    std::size_t connected = 0;
    for (const auto& in : inputs) connected += in.has_value() ? 1 : 0;
    if (connected != inputs.size()) {
      throw InputError("pin-count mismatch: " + where(inst) + " connects " +
                       std::to_string(connected) + " of " +
                       std::to_string(inputs.size()) + " input pins of '" +
                       inst.cell_type + "'");
    }
    if (!output) {
      output = out.nets.size();
      out.nets.push_back({*output, inst.name + "/" + lc->output});
    }
    Cell& cell = add_cell(lc->kind, inst.name);
    for (const auto& in : inputs) cell.inputs.push_back(*in);
    cell.output = output;
    cell.controls = std::move(controls);
  }

  for (int value = 0; value < 2; ++value) {
    if (!const_net[value]) continue;
    Cell& cell = add_cell(value ? CellKind::kConst1 : CellKind::kConst0,
                          value ? "$const1" : "$const0");
    cell.output = const_net[value];
  }

  for (NetId net : raw.outputs) {
    Cell& cell = add_cell(CellKind::kOutputPort, raw.nets[net]);
    cell.inputs.push_back(net);
    out.output_ports.push_back(cell.id);
  }

  out.validate();
  return out;
}

std::vector<CellId> registers_of(const Netlist& netlist) {
  std::vector<CellId> ids;
  for (const auto& cell : netlist.cells) {
    if (is_register(cell.kind)) ids.push_back(cell.id);
  }
  return ids;
}

std::string dump_netlist(const Netlist& netlist) {
  json doc;
  doc["schema"] = kMappedSchema;
  doc["name"] = netlist.name;
  json nets = json::array();
  for (const auto& net : netlist.nets) {
    nets.push_back(json{{"id", net.id}, {"name", net.name}});
  }
  doc["nets"] = std::move(nets);
  json cells = json::array();
  for (const auto& cell : netlist.cells) {
    json c;
    c["id"] = cell.id;
    c["kind"] = std::string(to_string(cell.kind));
    c["name"] = cell.name;
    c["inputs"] = cell.inputs;
    c["output"] = cell.output ? json(*cell.output) : json(nullptr);
    json controls = json::array();
    for (const auto& control : cell.controls) {
      controls.push_back(json{{"pin", control.pin}, {"net", control.net}});
    }
    c["controls"] = std::move(controls);
    cells.push_back(std::move(c));
  }
  doc["cells"] = std::move(cells);
  doc["input_ports"] = netlist.input_ports;
  doc["output_ports"] = netlist.output_ports;
  return doc.dump(1) + "\n";
}

Netlist load_netlist(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("mapped netlist: ") + e.what());
  }
  if (!doc.is_object() || doc.value("schema", "") != kMappedSchema) {
    throw InputError("mapped netlist: expected schema '" +
                     std::string(kMappedSchema) + "'");
  }
  Netlist netlist;
  try {
    netlist.name = doc.at("name").get<std::string>();
    for (const auto& net : doc.at("nets")) {
      netlist.nets.push_back(
          {net.at("id").get<NetId>(), net.at("name").get<std::string>()});
    }
    for (const auto& c : doc.at("cells")) {
      Cell cell;
      cell.id = c.at("id").get<CellId>();
      auto kind_name = c.at("kind").get<std::string>();
      auto kind = parse_cell_kind(kind_name);
      if (!kind) throw InputError("mapped netlist: unknown kind '" + kind_name + "'");
      cell.kind = *kind;
      cell.name = c.at("name").get<std::string>();
      cell.inputs = c.at("inputs").get<std::vector<NetId>>();
      if (!c.at("output").is_null()) cell.output = c.at("output").get<NetId>();
      for (const auto& control : c.at("controls")) {
        cell.controls.push_back({control.at("pin").get<std::string>(),
                                 control.at("net").get<NetId>()});
      }
      netlist.cells.push_back(std::move(cell));
    }
    netlist.input_ports = doc.at("input_ports").get<std::vector<CellId>>();
    netlist.output_ports = doc.at("output_ports").get<std::vector<CellId>>();
  } catch (const json::exception& e) {
    throw InputError(std::string("mapped netlist: ") + e.what());
  }
  netlist.validate();
  return netlist;
}

}  // namespace relic
