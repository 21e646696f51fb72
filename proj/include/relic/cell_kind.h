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

#ifndef RELIC_CELL_KIND_H_
#define RELIC_CELL_KIND_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace relic {

// Technology-independent cell model. The numeric value of each kind is its
// one-hot index in node feature vectors and must never be reordered.
enum class CellKind : unsigned char {
  kInv = 0,
  kBuf = 1,
  kAnd = 2,
  kOr = 3,
  kNand = 4,
  kNor = 5,
  kXor = 6,
  kXnor = 7,
  kMux2 = 8,
  kDff = 9,
  kLatch = 10,
  kInputPort = 11,
  kOutputPort = 12,
  kConst0 = 13,
  kConst1 = 14,
};

inline constexpr std::size_t kNumCellKinds = 15;

inline constexpr std::array<std::string_view, kNumCellKinds> kCellKindNames = {
    "INV",  "BUF",  "AND",   "OR",         "NAND",        "NOR",
    "XOR",  "XNOR", "MUX2",  "DFF",        "LATCH",       "INPUT_PORT",
    "OUTPUT_PORT", "CONST0", "CONST1"};

constexpr std::size_t one_hot_index(CellKind kind) {
  return static_cast<std::size_t>(kind);
}

constexpr std::string_view to_string(CellKind kind) {
  return kCellKindNames[one_hot_index(kind)];
}

constexpr bool is_register(CellKind kind) {
  return kind == CellKind::kDff || kind == CellKind::kLatch;
}

constexpr bool is_pseudo(CellKind kind) {
  return kind == CellKind::kInputPort || kind == CellKind::kOutputPort ||
         kind == CellKind::kConst0 || kind == CellKind::kConst1;
}

std::optional<CellKind> parse_cell_kind(std::string_view name);

}  // namespace relic

#endif  // RELIC_CELL_KIND_H_
