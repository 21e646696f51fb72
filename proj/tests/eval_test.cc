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

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "relic/circuit_graph.h"
#include "relic/corpus.h"
#include "relic/error.h"
#include "relic/evaluation.h"
#include "relic/netlist.h"
#include "relic/synth.h"
#include "relic/trainer.h"
#include "relic/verilog_parser.h"

namespace relic {
namespace {

Netlist mapped(const SynthDesign& design) {
  return map_to_independent(parse_netlist(design.verilog), generic_library());
}

PreparedDesign prepared(const SynthSpec& spec) {
  const SynthDesign design = generate_synthetic(spec);
  PreparedDesign p;
  p.corpus = prepare_design(mapped(design));
  p.truth = design.truth;
  return p;
}

// Register name prefix up to "_reg": the word a data register belongs to.
std::string word_of(const std::string& reg) { return reg.substr(0, reg.find("_reg")); }

TEST(Generator, CountsFollowTheSpec) {
  SynthSpec spec;
  spec.fsm_states = 0;
  spec.data_regs = 8;
  SynthDesign d = generate_synthetic(spec);
  EXPECT_TRUE(d.truth.state_registers().empty());
  EXPECT_EQ(d.truth.labels.size(), 8u);

  spec.fsm_states = 4;
  spec.data_regs = 60;
  d = generate_synthetic(spec);
  EXPECT_EQ(d.truth.labels.size(), 64u);
  EXPECT_EQ(d.truth.state_registers().size(), 4u);
  EXPECT_EQ(d.register_count, 64u);
  EXPECT_EQ(registers_of(mapped(d)).size(), 64u);
}

TEST(Generator, SoundAcrossSpecs) {
  for (int fsm : {0, 1, 2, 5, 8}) {
    for (int data : {0, 1, 13, 40}) {
      for (int fanin : {2, 3, 4}) {
        if (fsm + data == 0) continue;
        SynthSpec spec;
        spec.seed = static_cast<std::uint64_t>(fsm * 100 + data + fanin);
        spec.fsm_states = fsm;
        spec.data_regs = data;
        spec.fanin_max = fanin;
        spec.datapath_width = 1 + data % 9;
        spec.comb_depth = 1 + data % 4;
        const SynthDesign d = generate_synthetic(spec);
        const Netlist nl = mapped(d);
        ASSERT_NO_THROW(nl.validate());
        ASSERT_NO_THROW(build_graph(nl));
        EXPECT_EQ(registers_of(nl).size(), static_cast<std::size_t>(fsm + data));
        EXPECT_EQ(d.truth.state_registers().size(), static_cast<std::size_t>(fsm));

        std::map<NetId, int> sinks;
        for (const Cell& c : nl.cells) {
          if (!is_register(c.kind) && c.kind != CellKind::kOutputPort) {
            EXPECT_LE(c.inputs.size(), static_cast<std::size_t>(std::max(fanin, 3)))
                << c.name;
          }
          for (NetId n : c.inputs) ++sinks[n];
        }
        for (const auto& [net, count] : sinks) {
          EXPECT_LE(count, spec.max_fanout) << nl.nets[net].name;
        }
      }
    }
  }
}

TEST(Generator, DeterministicPerSeed) {
  SynthSpec spec;
  spec.seed = 9;
  EXPECT_EQ(generate_synthetic(spec).verilog, generate_synthetic(spec).verilog);
  SynthSpec other = spec;
  other.seed = 10;
  EXPECT_NE(generate_synthetic(other).verilog, generate_synthetic(spec).verilog);
}

TEST(Generator, RejectsInvalidSpecs) {
  SynthSpec spec;
  spec.fsm_states = -1;
  EXPECT_THROW(generate_synthetic(spec), Error);
  spec = SynthSpec{};
  spec.fanin_max = 0;
  EXPECT_THROW(generate_synthetic(spec), Error);
  spec.fanin_max = 1;
  EXPECT_NO_THROW(generate_synthetic(spec));
  spec = SynthSpec{};
  spec.datapath_width = 0;
  EXPECT_THROW(generate_synthetic(spec), Error);
}

TEST(Generator, WordsShareOneCone) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    SynthSpec spec;
    spec.seed = seed;
    spec.data_regs = 96;
    spec.datapath_width = seed % 3 == 0 ? 32 : seed % 3 == 1 ? 16 : 8;
    spec.max_fanout = seed % 2 ? 8 : 4;
    const DesignCorpus corpus = prepared(spec).corpus;
    std::map<std::string, const Subgraph*> first;
    for (const RegisterSample& r : corpus.registers) {
      if (r.name.rfind("state_", 0) == 0) continue;
      const auto [it, fresh] = first.emplace(word_of(r.name), &r.subgraph);
      if (!fresh) EXPECT_EQ(*it->second, r.subgraph) << "seed " << seed << " " << r.name;
    }
  }
}

TEST(Generator, WordsClusterTogetherAfterTraining) {
  SynthSpec spec;
  spec.seed = 3;
  spec.data_regs = 48;
  const PreparedDesign design = prepared(spec);
  std::vector<Subgraph> samples;
  for (const auto& r : design.corpus.registers) samples.push_back(r.subgraph);
  TrainConfig config;
  config.epochs = 20;
  const TrainResult trained = train(dedupe(samples), config);
  const DesignClassification result =
      classify_design(trained.model, design.corpus, kDefaultT1, kDefaultT2, 1);
  std::map<std::string, std::set<std::size_t>> groups;
  for (const RegisterResult& r : result.registers) {
    if (r.name.rfind("state_", 0) == 0) continue;
    groups[word_of(r.name)].insert(r.assignment.group);
  }
  EXPECT_EQ(groups.size(), 6u);
  for (const auto& [word, ids] : groups) EXPECT_EQ(ids.size(), 1u) << word;
}

TEST(Corpus, PathsRoundTrip) {
  const DesignCorpus corpus = prepared(SynthSpec{}).corpus;
  EXPECT_EQ(corpus.registers.size(), 64u);
  const std::string text = dump_paths(corpus);
  const DesignCorpus back = load_paths(text);
  EXPECT_EQ(back, corpus);
  EXPECT_EQ(dump_paths(back), text);
  EXPECT_THROW(load_paths("{\"schema\": \"relic.paths/9\"}"), Error);
}

TEST(Corpus, DepthOneKeepsTwoLevels) {
  const DesignCorpus corpus = prepare_design(mapped(generate_synthetic(SynthSpec{})), 1);
  for (const auto& r : corpus.registers) EXPECT_LE(r.path.levels.size(), 2u) << r.name;
}

TEST(Corpus, DedupeKeepsFirstOfEach) {
  const DesignCorpus corpus = prepared(SynthSpec{}).corpus;
  std::vector<Subgraph> all;
  for (const auto& r : corpus.registers) all.push_back(r.subgraph);
  const std::vector<Subgraph> unique = dedupe(all);
  std::vector<Subgraph> expected;
  for (const Subgraph& s : all) {
    bool seen = false;
    for (const Subgraph& e : expected) seen = seen || e == s;
    if (!seen) expected.push_back(s);
  }
  EXPECT_EQ(unique, expected);
  EXPECT_LT(unique.size(), all.size());
}

TEST(Corpus, LabelsRoundTripAndCoverAllRegisters) {
  const PreparedDesign design = prepared(SynthSpec{});
  const GateModel model = GateModel::initialize(ModelShape{}, 5);
  const DesignClassification result =
      classify_design(model, design.corpus, kDefaultT1, kDefaultT2, 5);
  EXPECT_EQ(result.labels().size(), design.truth.labels.size());
  const std::string text = dump_labels(result);
  const DesignClassification back = load_labels(text);
  EXPECT_EQ(dump_labels(back), text);
  EXPECT_EQ(back.labels(), result.labels());
  EXPECT_NO_THROW(confusion(result.labels(), design.truth));

  DesignCorpus empty;
  empty.design = "none";
  EXPECT_TRUE(classify_design(model, empty, kDefaultT1, kDefaultT2, 1).registers.empty());
}

TEST(Loocv, TwoTinyDesigns) {
  SynthSpec a;
  a.name = "a";
  a.fsm_states = 2;
  a.data_regs = 8;
  SynthSpec b = a;
  b.name = "b";
  b.seed = 2;
  b.fsm_states = 3;
  LoocvOptions options;
  options.train.epochs = 3;
  options.train.hidden = 8;
  const LoocvResult result = loocv({prepared(a), prepared(b)}, options);
  ASSERT_EQ(result.report.rows.size(), 2u);
  ASSERT_EQ(result.folds.size(), 2u);
  for (const FoldSummary& f : result.folds) {
    EXPECT_EQ(f.training_designs.size(), 1u);
    EXPECT_NE(f.training_designs.front(), f.held_out);
  }
  EXPECT_EQ(result.report.rows[0].design, "a");
  EXPECT_EQ(result.report.rows[0].counts.total(), 10u);
  EXPECT_EQ(result.report.rows[1].counts.total(), 11u);

  const Metrics avg = result.report.average();
  ASSERT_TRUE(avg.accuracy.has_value());
  EXPECT_DOUBLE_EQ(*avg.accuracy, (*result.report.rows[0].values.accuracy +
                                   *result.report.rows[1].values.accuracy) /
                                      2.0);
}

TEST(Loocv, FoldTrainingExcludesHeldOutSamples) {
  SynthSpec a;
  a.name = "a";
  a.data_regs = 8;
  SynthSpec b = a;
  b.name = "b";
  b.seed = 7;
  b.comb_depth = 1;
  const PreparedDesign pa = prepared(a);
  const PreparedDesign pb = prepared(b);
  LoocvOptions options;
  options.train.epochs = 1;
  options.train.hidden = 4;
  const LoocvResult result = loocv({pa, pb}, options);
  std::vector<Subgraph> only_b;
  for (const auto& r : pb.corpus.registers) only_b.push_back(r.subgraph);
  EXPECT_EQ(result.folds[0].training_samples, dedupe(only_b).size());
}

TEST(Loocv, RejectsTooFewOrDuplicateDesigns) {
  LoocvOptions options;
  EXPECT_THROW(loocv({}, options), Error);
  const PreparedDesign one = prepared(SynthSpec{});
  EXPECT_THROW(loocv({one}, options), Error);
  EXPECT_THROW(loocv({one, one}, options), Error);
}

TEST(WorkBounds, Examples) {
  EXPECT_EQ(work_bounds(2, 1).extraction, 4u);
  std::uint64_t sum = 0;
  for (int i = 1; i <= 5; ++i) sum += static_cast<std::uint64_t>(std::pow(4.0, i));
  EXPECT_EQ(sum, 1364u);
  EXPECT_EQ(work_bounds(6, 10).extraction, sum * 10);
  EXPECT_EQ(work_bounds(6, 10).extraction, 13640u);
  EXPECT_EQ(work_bounds(6, 2, 17, 64).network, (sum * 17 * 64 + sum * 64) * 2);
  EXPECT_EQ(work_bounds(1, 7).extraction, 0u);
}

TEST(WorkBounds, HoldsOnGeneratedDesigns) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SynthSpec spec;
    spec.seed = seed;
    spec.fsm_states = static_cast<int>(seed) + 1;
    spec.data_regs = 32;
    const Netlist nl = mapped(generate_synthetic(spec));
    const CircuitGraph g = build_graph(nl);
    std::uint64_t total = 0;
    for (const auto& r : prepare_design(nl).registers) {
      std::size_t nodes = 0;
      for (const auto& level : r.path.levels) nodes += level.size();
      total += nodes - 1;
      EXPECT_LE(nodes - 1, work_bounds(kDefaultWalkLength, 1).extraction);
    }
    EXPECT_LE(total, work_bounds(g, kDefaultWalkLength).extraction);
  }
}

}  // namespace
}  // namespace relic
