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

#ifndef RELIC_CHECKPOINT_H_
#define RELIC_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "relic/gate_model.h"

namespace relic {

inline constexpr int kCheckpointVersion = 1;

// Text checkpoint, four lines:
//   RELIC-GATE-CHECKPOINT <version>
//   {"shape": {...}, "seed": ..., "param_count": ...}
//   <parameters as base64 of little-endian IEEE-754 doubles>
//   crc32 <8 hex digits over all preceding bytes>
std::string serialize_model(const GateModel& model, std::uint64_t seed);

struct LoadedModel {
  GateModel model;
  std::uint64_t seed = 0;
};

// Throws InputError on version mismatch, checksum failure or truncation.
LoadedModel deserialize_model(std::string_view text);

void save_model(const GateModel& model, std::uint64_t seed,
                const std::filesystem::path& path);
LoadedModel load_model(const std::filesystem::path& path);

}  // namespace relic

#endif  // RELIC_CHECKPOINT_H_
