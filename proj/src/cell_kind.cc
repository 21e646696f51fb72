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

#include "relic/cell_kind.h"

namespace relic {

std::optional<CellKind> parse_cell_kind(std::string_view name) {
  for (std::size_t i = 0; i < kNumCellKinds; ++i) {
    if (kCellKindNames[i] == name) return static_cast<CellKind>(i);
  }
  return std::nullopt;
}

}  // namespace relic
