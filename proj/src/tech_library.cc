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

#include "relic/tech_library.h"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "relic/error.h"

namespace relic {

using json = nlohmann::ordered_json;

std::vector<std::string> LibraryCell::control_pins() const {
  std::vector<std::string> pins;
  for (const auto* pin : {&clock, &reset, &enable}) {
    if (pin->has_value()) pins.push_back(**pin);
  }
  return pins;
}

void TechLibrary::add(std::string name, LibraryCell cell) {
  if (entries_.contains(name)) {
    throw InputError("duplicate library cell '" + name + "'");
  }
  if (cell.output.empty()) {
    throw InputError("library cell '" + name + "' has no output pin");
  }
  std::set<std::string> seen;
  for (const auto& pin : cell.inputs) {
    if (!seen.insert(pin).second) {
      throw InputError("library cell '" + name + "' repeats pin '" + pin + "'");
    }
  }
  for (const auto& pin : cell.control_pins()) {
    if (!seen.insert(pin).second) {
      throw InputError("library cell '" + name + "' repeats pin '" + pin + "'");
    }
  }
  if (seen.contains(cell.output)) {
    throw InputError("library cell '" + name +
                     "': output pin also listed as input");
  }
  // Pseudo kinds only arise from ports and literals.
  if (is_pseudo(cell.kind)) {
    throw InputError("library cell '" + name + "' maps to pseudo kind " +
                     std::string(to_string(cell.kind)));
  }
  const std::size_t n = cell.inputs.size();
  bool arity_ok = true;
  switch (cell.kind) {
    case CellKind::kInv:
    case CellKind::kBuf:
    case CellKind::kDff:
    case CellKind::kLatch:
      arity_ok = n == 1;
      break;
    case CellKind::kMux2:
      arity_ok = n == 3;
      break;
    default:
      arity_ok = n >= 2;
      break;
  }
  if (!arity_ok) {
    throw InputError("library cell '" + name + "' has " + std::to_string(n) +
                     " data inputs, invalid for kind " +
                     std::string(to_string(cell.kind)));
  }
  entries_.emplace(std::move(name), std::move(cell));
}

const LibraryCell* TechLibrary::find(std::string_view name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

namespace {

std::optional<std::string> optional_string(const json& entry,
                                           const char* key,
                                           const std::string& cell) {
  if (!entry.contains(key)) return std::nullopt;
  if (!entry[key].is_string()) {
    throw InputError("library cell '" + cell + "': '" + key +
                     "' must be a string");
  }
  return entry[key].get<std::string>();
}

}  // namespace

TechLibrary parse_tech_library(std::string_view json_text) {
  // nlohmann silently keeps the last of duplicate keys, so top-level keys
  // are checked while parsing.
  std::set<std::string> top_keys;
  std::string duplicate;
  json::parser_callback_t check_keys = [&](int depth, json::parse_event_t event,
                                           json& parsed) {
    if (event == json::parse_event_t::key && depth == 1) {
      auto key = parsed.get<std::string>();
      if (!top_keys.insert(key).second && duplicate.empty()) duplicate = key;
    }
    return true;
  };
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end(), check_keys);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("tech library: ") + e.what());
  }
  if (!duplicate.empty()) {
    throw InputError("duplicate library cell '" + duplicate + "'");
  }
  if (!doc.is_object()) {
    throw InputError("tech library: top level must be a JSON object");
  }

  TechLibrary lib;
  for (const auto& [name, entry] : doc.items()) {
    if (!entry.is_object()) {
      throw InputError("library cell '" + name + "' must be an object");
    }
    LibraryCell cell;
    if (!entry.contains("kind") || !entry["kind"].is_string()) {
      throw InputError("library cell '" + name + "' lacks a 'kind' string");
    }
    auto kind_name = entry["kind"].get<std::string>();
    auto kind = parse_cell_kind(kind_name);
    if (!kind) {
      throw InputError("library cell '" + name + "': unknown kind '" +
                       kind_name + "'");
    }
    cell.kind = *kind;
    if (!entry.contains("inputs") || !entry["inputs"].is_array() ||
        entry["inputs"].empty()) {
      throw InputError("library cell '" + name +
                       "' needs a non-empty 'inputs' array");
    }
    for (const auto& pin : entry["inputs"]) {
      if (!pin.is_string()) {
        throw InputError("library cell '" + name + "': pin names must be strings");
      }
      cell.inputs.push_back(pin.get<std::string>());
    }
    if (!entry.contains("output") || !entry["output"].is_string()) {
      throw InputError("library cell '" + name + "' lacks an 'output' string");
    }
    cell.output = entry["output"].get<std::string>();
    cell.clock = optional_string(entry, "clock", name);
    cell.reset = optional_string(entry, "reset", name);
    cell.enable = optional_string(entry, "enable", name);
    lib.add(name, std::move(cell));
  }
  return lib;
}

TechLibrary load_tech_library(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open tech library '" + path.string() + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_tech_library(buffer.str());
}

std::string dump_tech_library(const TechLibrary& lib) {
  json doc = json::object();
  for (const auto& [name, cell] : lib.entries()) {
    json entry;
    entry["kind"] = std::string(to_string(cell.kind));
    entry["inputs"] = cell.inputs;
    entry["output"] = cell.output;
    if (cell.clock) entry["clock"] = *cell.clock;
    if (cell.reset) entry["reset"] = *cell.reset;
    if (cell.enable) entry["enable"] = *cell.enable;
    doc[name] = std::move(entry);
  }
  return doc.dump(2) + "\n";
}

}  // namespace relic
