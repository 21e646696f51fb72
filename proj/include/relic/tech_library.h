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

#ifndef RELIC_TECH_LIBRARY_H_
#define RELIC_TECH_LIBRARY_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relic/cell_kind.h"

namespace relic {

// One library cell renamed onto the technology-independent model.
//
// `inputs` are the data pins in the order they become node inputs. Clock,
// reset and enable pins of sequential cells are control pins: they are kept
// as metadata on the mapped cell but never become data-dependency edges.
struct LibraryCell {
  CellKind kind = CellKind::kBuf;
  std::vector<std::string> inputs;
  std::string output;
  std::optional<std::string> clock;
  std::optional<std::string> reset;
  std::optional<std::string> enable;

  std::vector<std::string> control_pins() const;
  bool operator==(const LibraryCell&) const = default;
};

class TechLibrary {
 public:
  TechLibrary() = default;

  // Validates and inserts; throws InputError on duplicates or bad pins.
  void add(std::string name, LibraryCell cell);

  const LibraryCell* find(std::string_view name) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, LibraryCell, std::less<>>& entries() const {
    return entries_;
  }

  bool operator==(const TechLibrary&) const = default;

 private:
  std::map<std::string, LibraryCell, std::less<>> entries_;
};

// Reads the JSON mapping format:
//   { "<cell>": {"kind": "AND", "inputs": ["A","B"], "output": "Y",
//                "clock": "CK", "reset": "RN", "enable": "E"} }
// where clock/reset/enable are optional.
TechLibrary load_tech_library(const std::filesystem::path& path);
TechLibrary parse_tech_library(std::string_view json_text);
std::string dump_tech_library(const TechLibrary& lib);

}  // namespace relic

#endif  // RELIC_TECH_LIBRARY_H_
