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

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <filesystem>
#include <fstream>
#include <string>

#include "relic/error.h"
#include "relic/netlist.h"
#include "relic/synth.h"
#include "relic/tech_library.h"
#include "relic/verilog_parser.h"

namespace relic {
namespace {

using ::testing::HasSubstr;

TechLibrary small_library() {
  return parse_tech_library(R"({
    "AND2X1": {"kind": "AND", "inputs": ["A", "B"], "output": "Y"},
    "INVX1":  {"kind": "INV", "inputs": ["A"], "output": "Y"},
    "DFFX1":  {"kind": "DFF", "inputs": ["D"], "output": "Q", "clock": "CK"},
    "DFFRX1": {"kind": "DFF", "inputs": ["D"], "output": "Q", "clock": "CK", "reset": "RN"},
    "LATX1":  {"kind": "LATCH", "inputs": ["D"], "output": "Q", "clock": "G"}
  })");
}

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(TechLibrary, SingleEntry) {
  const TechLibrary lib = parse_tech_library(
      R"({"AND2X1": {"kind":"AND","inputs":["A","B"],"output":"Y"}})");
  ASSERT_EQ(lib.size(), 1u);
  const LibraryCell* cell = lib.find("AND2X1");
  ASSERT_NE(cell, nullptr);
  EXPECT_EQ(cell->kind, CellKind::kAnd);
  EXPECT_EQ(cell->inputs, (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(cell->output, "Y");
}

TEST(TechLibrary, EmptyObjectIsValid) { EXPECT_EQ(parse_tech_library("{}").size(), 0u); }

TEST(TechLibrary, TwoRegisterNamesRoundTrip) {
  const TechLibrary lib = parse_tech_library(R"({
    "DFFA": {"kind":"DFF","inputs":["D"],"output":"Q","clock":"C"},
    "DFFB": {"kind":"DFF","inputs":["D"],"output":"Q","clock":"C","reset":"R"}})");
  ASSERT_EQ(lib.size(), 2u);
  EXPECT_TRUE(is_register(lib.find("DFFA")->kind));
  EXPECT_TRUE(is_register(lib.find("DFFB")->kind));
  EXPECT_EQ(parse_tech_library(dump_tech_library(lib)), lib);
}

TEST(TechLibrary, Rejections) {
  EXPECT_THAT(error_of([] {
                parse_tech_library(R"({"X": {"kind":"AND","inputs":["A","B"],"output":"Y"},
                                       "X": {"kind":"OR","inputs":["A","B"],"output":"Y"}})");
              }),
              HasSubstr("duplicate library cell 'X'"));
  EXPECT_THAT(error_of([] {
                parse_tech_library(R"({"X": {"kind":"AOI21","inputs":["A"],"output":"Y"}})");
              }),
              HasSubstr("unknown kind 'AOI21'"));
  EXPECT_THAT(error_of([] {
                parse_tech_library(R"({"X": {"kind":"AND","inputs":["A","Y"],"output":"Y"}})");
              }),
              HasSubstr("X"));
  EXPECT_THAT(error_of([] { parse_tech_library("{\n  \"X\": \n"); }),
              HasSubstr("line"));
}

TEST(TechLibrary, MissingFileNamesPath) {
  EXPECT_THAT(error_of([] { load_tech_library("/nonexistent/lib.json"); }),
              HasSubstr("/nonexistent/lib.json"));
}

TEST(Parser, EmptyModule) {
  const RawNetlist raw = parse_netlist("module m; endmodule");
  EXPECT_EQ(raw.name, "m");
  EXPECT_TRUE(raw.instances.empty());
  EXPECT_TRUE(raw.nets.empty());
}

TEST(Parser, SingleInstance) {
  const RawNetlist raw = parse_netlist(R"(
    module top (a, b, y);
      input a, b;
      output y;
      AND2X1 u1 (.A(a), .B(b), .Y(y));
    endmodule)");
  ASSERT_EQ(raw.instances.size(), 1u);
  EXPECT_EQ(raw.nets.size(), 3u);
  const Netlist nl = map_to_independent(raw, small_library());
  const auto it = std::find_if(nl.cells.begin(), nl.cells.end(),
                               [](const Cell& c) { return c.name == "u1"; });
  ASSERT_NE(it, nl.cells.end());
  EXPECT_EQ(it->kind, CellKind::kAnd);
  EXPECT_EQ(it->inputs.size(), 2u);
}

TEST(Parser, FeedbackThroughInverter) {
  const RawNetlist raw = parse_netlist(R"(
    module fb (clk);
      input clk;
      wire q, qn;
      DFFX1 r (.D(qn), .CK(clk), .Q(q));
      INVX1 i (.A(q), .Y(qn));
    endmodule)");
  const Netlist nl = map_to_independent(raw, small_library());
  // Expected: INPUT_PORT clk, then r, then i.
  ASSERT_EQ(nl.cells.size(), 3u);
  const Cell& reg = nl.cells[1];
  const Cell& inv = nl.cells[2];
  EXPECT_EQ(reg.kind, CellKind::kDff);
  EXPECT_EQ(inv.kind, CellKind::kInv);
  EXPECT_EQ(reg.inputs, std::vector<NetId>{*inv.output});
  EXPECT_EQ(inv.inputs, std::vector<NetId>{*reg.output});
  ASSERT_EQ(reg.controls.size(), 1u);
  EXPECT_EQ(reg.controls[0].pin, "CK");
  EXPECT_EQ(nl.nets[reg.controls[0].net].name, "clk");
}

TEST(Parser, BusesAndEscapedNames) {
  const RawNetlist raw = parse_netlist(R"(
    module bus (d, \q$x );
      input [1:0] d;
      output \q$x ;
      /* block comment */ (* keep *)
      AND2X1 g (.A(d[0]), .B(d[1]), .Y(\q$x )); // trailing
    endmodule)");
  EXPECT_EQ(raw.inputs.size(), 2u);
  EXPECT_EQ(raw.nets[raw.instances[0].pins[0].net], "d[0]");
  EXPECT_EQ(raw.nets[raw.instances[0].pins[2].net], "q$x");
}

TEST(Parser, ErrorsReportPosition) {
  EXPECT_THAT(error_of([] {
                parse_netlist("module m (a);\n input a;\n AND2X1 u (a, a);\nendmodule");
              }),
              HasSubstr("syntax error at 3:"));
  EXPECT_THAT(error_of([] {
                parse_netlist("module m;\n AND2X1 u (.A(zz), .B(zz), .Y(zz));\nendmodule");
              }),
              HasSubstr("syntax error at 2:"));
  EXPECT_THAT(error_of([] {
                parse_netlist("module m (a);\n input a;\n assign a = 1'b0;\nendmodule");
              }),
              HasSubstr("syntax error at 3:"));
}

TEST(Mapping, UnmappedCellNamesInstance) {
  const RawNetlist raw = parse_netlist(R"(
    module m (a, y);
      input a; output y;
      MYSTERY1 u7 (.A(a), .Y(y));
    endmodule)");
  const std::string msg = error_of([&] { map_to_independent(raw, small_library()); });
  EXPECT_THAT(msg, HasSubstr("MYSTERY1"));
  EXPECT_THAT(msg, HasSubstr("u7"));
}

TEST(Mapping, PinCountMismatch) {
  const RawNetlist raw = parse_netlist(R"(
    module m (a, y);
      input a; output y;
      AND2X1 u (.A(a), .Y(y));
    endmodule)");
  EXPECT_THAT(error_of([&] { map_to_independent(raw, small_library()); }),
              HasSubstr("pin-count mismatch"));
}

TEST(Mapping, MultipleDriversRejected) {
  const RawNetlist raw = parse_netlist(R"(
    module m (a, y);
      input a; output y;
      INVX1 u1 (.A(a), .Y(y));
      INVX1 u2 (.A(a), .Y(y));
    endmodule)");
  EXPECT_THAT(error_of([&] { map_to_independent(raw, small_library()); }),
              HasSubstr("multiple drivers"));
}

TEST(Mapping, TieHighBecomesConst1Cell) {
  const RawNetlist raw = parse_netlist(R"(
    module m (a, y);
      input a; output y;
      AND2X1 u (.A(a), .B(1'b1), .Y(y));
    endmodule)");
  const Netlist nl = map_to_independent(raw, small_library());
  // Hand-derived layout: a, u, $const1, y.
  ASSERT_EQ(nl.cells.size(), 4u);
  EXPECT_EQ(nl.cells[0].kind, CellKind::kInputPort);
  EXPECT_EQ(nl.cells[1].kind, CellKind::kAnd);
  EXPECT_EQ(nl.cells[2].kind, CellKind::kConst1);
  EXPECT_EQ(nl.cells[3].kind, CellKind::kOutputPort);
  const NetId tie = *nl.cells[2].output;
  EXPECT_EQ(nl.nets[tie].name, "1'b1");
  EXPECT_EQ(nl.cells[1].inputs[1], tie);
  EXPECT_EQ(nl.cells[1].inputs[0], *nl.cells[0].output);
  EXPECT_EQ(nl.cells[3].inputs[0], *nl.cells[1].output);
}

TEST(Mapping, RegistersOf) {
  const RawNetlist raw = parse_netlist(R"(
    module m (clk, d);
      input clk, d;
      wire a, b, c, e;
      DFFX1 r1 (.D(d), .CK(clk), .Q(a));
      DFFRX1 r2 (.D(a), .CK(clk), .RN(d), .Q(b));
      INVX1 g (.A(b), .Y(c));
      DFFX1 r3 (.D(c), .CK(clk), .Q(e));
      LATX1 l1 (.D(e), .G(clk), .Q());
    endmodule)");
  const Netlist nl = map_to_independent(raw, small_library());
  const auto regs = registers_of(nl);
  ASSERT_EQ(regs.size(), 4u);
  EXPECT_TRUE(std::is_sorted(regs.begin(), regs.end()));
  for (CellId id : regs) EXPECT_TRUE(is_register(nl.cells[id].kind));

  const Netlist comb = map_to_independent(
      parse_netlist("module c (a, y); input a; output y; INVX1 g (.A(a), .Y(y)); endmodule"),
      small_library());
  EXPECT_TRUE(registers_of(comb).empty());
}

TEST(Mapping, SyntheticRegisterCountMatchesGenerator) {
  SynthSpec spec;
  spec.fsm_states = 3;
  spec.data_regs = 7;
  const SynthDesign d = generate_synthetic(spec);
  const Netlist nl = map_to_independent(parse_netlist(d.verilog), generic_library());
  EXPECT_EQ(registers_of(nl).size(), 10u);
  EXPECT_EQ(d.register_count, 10u);
}

TEST(Mapping, DumpRoundTripAndDeterminism) {
  SynthSpec spec;
  spec.seed = 11;
  const SynthDesign d = generate_synthetic(spec);
  const Netlist a = map_to_independent(parse_netlist(d.verilog), generic_library());
  const Netlist b = map_to_independent(parse_netlist(d.verilog), generic_library());
  EXPECT_EQ(a, b);
  const std::string dumped = dump_netlist(a);
  EXPECT_EQ(load_netlist(dumped), a);
  EXPECT_EQ(dump_netlist(load_netlist(dumped)), dumped);
}

TEST(Mapping, SchemaMismatchRejected) {
  EXPECT_THAT(error_of([] { load_netlist(R"({"schema": "relic.mapped/0"})"); }),
              HasSubstr("schema"));
}

}  // namespace
}  // namespace relic
