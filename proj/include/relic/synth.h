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

#ifndef RELIC_SYNTH_H_
#define RELIC_SYNTH_H_

#include <cstdint>
#include <string>

#include "relic/metrics.h"
#include "relic/tech_library.h"

namespace relic {

// Parameters of a generated benchmark: one one-hot FSM steering a datapath
// of multi-bit register words.
struct SynthSpec {
  std::string name = "synth";
  std::uint64_t seed = 1;
  int fsm_states = 4;
  int data_regs = 60;
  int datapath_width = 8;
  int comb_depth = 3;
  int fanin_max = 4;
  // Nets driving more data pins than this are split by buffer trees, as a
  // synthesis tool would under a max-fanout constraint. 0 disables it.
  int max_fanout = 8;

  // Throws InputError for negative counts, fanin_max < 1 or width < 1.
  void validate() const;
};

struct SynthDesign {
  std::string verilog;
  GroundTruth truth;
  std::size_t gate_count = 0;      // combinational instances
  std::size_t register_count = 0;  // DFF instances
};

SynthDesign generate_synthetic(const SynthSpec& spec);

// The cell library the generator instantiates, covering every
// combinational kind plus DFFs with optional active-low reset.
TechLibrary generic_library();

}  // namespace relic

#endif  // RELIC_SYNTH_H_
