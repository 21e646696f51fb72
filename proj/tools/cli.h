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

#ifndef RELIC_TOOLS_CLI_H_
#define RELIC_TOOLS_CLI_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "relic/circuit_graph.h"
#include "relic/classifier.h"
#include "relic/trainer.h"

namespace relic::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

// Every tunable of the pipeline. Defaults are the published settings; a JSON
// file given with --config overrides them and explicit flags override both.
struct PipelineConfig {
  std::filesystem::path tech_library;
  int walk_length = kDefaultWalkLength;
  TrainConfig train;
  double t1 = kDefaultT1;
  std::size_t t2 = kDefaultT2;
  std::uint64_t seed = 1;
  std::filesystem::path out = ".";
};

// Applies the keys of a JSON object to `config`. Keys named in `skip` are
// ignored. Unknown keys are an input error.
void apply_config_json(std::string_view json_text, PipelineConfig& config,
                       const std::vector<std::string>& skip = {});

// Entry point shared by the executable and the integration tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace relic::cli

#endif  // RELIC_TOOLS_CLI_H_
