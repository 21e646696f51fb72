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

#include "relic/synth.h"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "relic/error.h"
#include "relic/rng.h"

namespace relic {

void SynthSpec::validate() const {
  if (fsm_states < 0 || data_regs < 0 || comb_depth < 0) {
    throw InputError("synthetic spec: counts must be non-negative");
  }
  if (datapath_width < 1) throw InputError("synthetic spec: width must be >= 1");
  if (fanin_max < 1) throw InputError("synthetic spec: fanin_max must be >= 1");
  if (max_fanout < 0) throw InputError("synthetic spec: max_fanout must be non-negative");
}

TechLibrary generic_library() {
  TechLibrary lib;
  const std::vector<std::string> pins = {"A", "B", "C", "D"};
  lib.add("INVX1", {CellKind::kInv, {"A"}, "Y"});
  lib.add("BUFX1", {CellKind::kBuf, {"A"}, "Y"});
  const std::pair<const char*, CellKind> multi[] = {{"AND", CellKind::kAnd},
                                                    {"OR", CellKind::kOr},
                                                    {"NAND", CellKind::kNand},
                                                    {"NOR", CellKind::kNor}};
  for (const auto& [prefix, kind] : multi) {
    for (std::size_t n = 2; n <= 4; ++n) {
      lib.add(std::string(prefix) + std::to_string(n) + "X1",
              {kind, std::vector<std::string>(pins.begin(), pins.begin() + n), "Y"});
    }
  }
  lib.add("XOR2X1", {CellKind::kXor, {"A", "B"}, "Y"});
  lib.add("XNOR2X1", {CellKind::kXnor, {"A", "B"}, "Y"});
  lib.add("MUX2X1", {CellKind::kMux2, {"A", "B", "S"}, "Y"});
  lib.add("DFFX1", {CellKind::kDff, {"D"}, "Q", "CK"});
  lib.add("DFFRX1", {CellKind::kDff, {"D"}, "Q", "CK", "RN"});
  lib.add("LATCHX1", {CellKind::kLatch, {"D"}, "Q", "G"});
  return lib;
}

namespace {

// Collects wire declarations and instances of the generic library.
class Builder {
 public:
  // `roles` optionally names the template slot each input fills; buffering
  // orders the sinks of a net by it.
  std::string gate(CellKind kind, std::vector<std::string> inputs,
                   const std::vector<int>& roles = {}) {
    std::string cell;
    switch (kind) {
      case CellKind::kInv: cell = "INVX1"; break;
      case CellKind::kBuf: cell = "BUFX1"; break;
      case CellKind::kAnd: cell = "AND"; break;
      case CellKind::kOr: cell = "OR"; break;
      case CellKind::kNand: cell = "NAND"; break;
      case CellKind::kNor: cell = "NOR"; break;
      case CellKind::kXor: cell = "XOR2X1"; break;
      case CellKind::kXnor: cell = "XNOR2X1"; break;
      case CellKind::kMux2: cell = "MUX2X1"; break;
      default: throw InputError("generator: unsupported gate kind");
    }
    if (cell.size() <= 4) cell += std::to_string(inputs.size()) + "X1";
    static const char* kPins[] = {"A", "B", "C", "D"};
    static const char* kMuxPins[] = {"A", "B", "S"};
    const char* const* pins = kind == CellKind::kMux2 ? kMuxPins : kPins;
    Instance inst{cell, "U" + std::to_string(++gates_), {}, group_};
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      inst.pins.push_back({pins[i], std::move(inputs[i]), true,
                           i < roles.size() ? roles[i] : static_cast<int>(i)});
    }
    std::string out = fresh_wire();
    inst.pins.push_back({"Y", out, false});
    instances_.push_back(std::move(inst));
    return out;
  }

  void declare(const std::string& wire) { wires_.push_back(wire); }

  // Tags every instance created from now on. Fanout buffering keeps the
  // sinks of one tag together.
  void set_group(int group) { group_ = group; }

  void dff(const std::string& name, const std::string& d, const std::string& q,
           bool with_reset) {
    Instance inst{with_reset ? "DFFRX1" : "DFFX1", name, {{"D", d, true}}, group_};
    inst.pins.push_back({"CK", "clk", false});
    if (with_reset) inst.pins.push_back({"RN", "rst_n", false});
    inst.pins.push_back({"Q", q, false});
    instances_.push_back(std::move(inst));
    ++registers_;
  }

  void buffer_to(const std::string& from, const std::string& to) {
    instances_.push_back(
        {"BUFX1", "U" + std::to_string(++gates_), {{"A", from, true}, {"Y", to, false}}, -1});
  }

  // Rebuilds every net with more than `limit` data sinks as a tree of
  // buffers, each driving at most `limit` sinks. Sinks sharing a group tag
  // go behind the same buffer when they fit; a larger group is split into
  // near-equal slices.
  void limit_fanout(int limit) {
    if (limit < 2) return;
    const auto cap = static_cast<std::size_t>(limit);
    std::map<std::string, std::vector<Sink>> sinks;
    for (std::size_t i = 0; i < instances_.size(); ++i) {
      for (std::size_t p = 0; p < instances_[i].pins.size(); ++p) {
        if (instances_[i].pins[p].data_input) sinks[instances_[i].pins[p].net].push_back({i, p});
      }
    }
    for (auto& [net, list] : sinks) {
      while (list.size() > cap) {
        std::vector<Sink> parents;
        for (const auto& chunk : pack(list, cap)) {
          const std::string wire = fresh_wire();
          int group = instances_[chunk.front().instance].group;
          for (const Sink& sink : chunk) {
            instances_[sink.instance].pins[sink.pin].net = wire;
            if (instances_[sink.instance].group != group) group = -1;
          }
          instances_.push_back({"BUFX1",
                                "U" + std::to_string(++gates_),
                                {{"A", net, true}, {"Y", wire, false}},
                                group});
          parents.push_back({instances_.size() - 1, 0});
        }
        list = std::move(parents);
      }
    }
  }

  std::size_t gates() const { return gates_; }
  std::size_t registers() const { return registers_; }
  const std::vector<std::string>& wires() const { return wires_; }

  void emit(std::ostream& out) const {
    for (const auto& inst : instances_) {
      out << "  " << inst.cell << " " << inst.name << " (";
      for (std::size_t p = 0; p < inst.pins.size(); ++p) {
        if (p) out << ", ";
        out << "." << inst.pins[p].pin << "(" << inst.pins[p].net << ")";
      }
      out << ");\n";
    }
  }

 private:
  struct Pin {
    std::string pin;
    std::string net;
    bool data_input;
    int role = 0;
  };
  struct Instance {
    std::string cell;
    std::string name;
    std::vector<Pin> pins;
    int group = -1;
  };
  struct Sink {
    std::size_t instance;
    std::size_t pin;
  };

  // Splits sinks into buffer loads of at most `cap`, in order of first
  // appearance of each group.
  std::vector<std::vector<Sink>> pack(const std::vector<Sink>& list, std::size_t cap) const {
    std::vector<int> order;
    std::map<int, std::vector<Sink>> by_group;
    for (const Sink& sink : list) {
      const int g = instances_[sink.instance].group;
      if (!by_group.count(g)) order.push_back(g);
      by_group[g].push_back(sink);
    }
    std::vector<std::vector<Sink>> chunks;
    std::vector<Sink> open;
    for (int g : order) {
      std::vector<Sink>& members = by_group[g];
      if (members.size() > cap) {
        std::stable_sort(members.begin(), members.end(), [&](const Sink& a, const Sink& b) {
          return instances_[a.instance].pins[a.pin].role <
                 instances_[b.instance].pins[b.pin].role;
        });
        const std::size_t parts = (members.size() + cap - 1) / cap;
        for (std::size_t k = 0; k < parts; ++k) {
          chunks.emplace_back(members.begin() + static_cast<std::ptrdiff_t>(k * members.size() / parts),
                              members.begin() +
                                  static_cast<std::ptrdiff_t>((k + 1) * members.size() / parts));
        }
        continue;
      }
      if (open.size() + members.size() > cap) chunks.push_back(std::move(open)), open.clear();
      open.insert(open.end(), members.begin(), members.end());
    }
    if (!open.empty()) chunks.push_back(std::move(open));
    return chunks;
  }

  std::string fresh_wire() {
    std::string name = "n" + std::to_string(wires_.size());
    wires_.push_back(name);
    return name;
  }

  std::vector<std::string> wires_;
  std::vector<Instance> instances_;
  std::size_t gates_ = 0;
  std::size_t registers_ = 0;
  int group_ = -1;
};

constexpr CellKind kLogicKinds[] = {CellKind::kAnd, CellKind::kOr,  CellKind::kNand,
                                    CellKind::kNor, CellKind::kXor, CellKind::kXnor};

struct TreeTemplate {
  std::vector<CellKind> kinds;  // index 0 = level just above the leaves
  std::vector<int> arity;
};

TreeTemplate random_tree(Rng& rng, int depth, int fanin_max) {
  TreeTemplate t;
  for (int level = 0; level < depth; ++level) {
    CellKind kind;
    int arity;
    if (fanin_max == 1) {
      kind = rng.below(2) ? CellKind::kInv : CellKind::kBuf;
      arity = 1;
    } else {
      kind = kLogicKinds[rng.below(6)];
      const bool top = level == depth - 1;
      arity = top ? 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(fanin_max - 1)))
                  : 2;
      if (kind == CellKind::kXor || kind == CellKind::kXnor) arity = 2;
    }
    t.kinds.push_back(kind);
    t.arity.push_back(arity);
  }
  return t;
}

std::string build_tree(Builder& b, const TreeTemplate& t, int level,
                       const std::vector<std::string>& leaves, std::size_t& cursor) {
  std::vector<std::string> inputs;
  std::vector<int> roles;
  for (int k = 0; k < t.arity[static_cast<std::size_t>(level - 1)]; ++k) {
    if (level == 1) {
      roles.push_back(static_cast<int>(cursor % leaves.size()));
      inputs.push_back(leaves[cursor++ % leaves.size()]);
    } else {
      roles.push_back(-1);
      inputs.push_back(build_tree(b, t, level - 1, leaves, cursor));
    }
  }
  return b.gate(t.kinds[static_cast<std::size_t>(level - 1)], std::move(inputs), roles);
}

enum class WordKind { kAccumulate, kAdder, kShift, kPipeline };

}  // namespace

SynthDesign generate_synthetic(const SynthSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  Builder b;
  const int n = spec.fsm_states;
  const int width = spec.datapath_width;
  const int ctl_width = std::max(4, 2 * n);
  auto wrap = [](int i, int m) { return ((i % m) + m) % m; };
  auto ctl = [&](int i) { return "ctl[" + std::to_string(wrap(i, ctl_width)) + "]"; };
  auto din = [&](int i) { return "din[" + std::to_string(wrap(i, width)) + "]"; };

  SynthDesign design;
  design.truth.design = spec.name;

  // One-hot FSM. Each state gets its own next-state template so that no two
  // state registers share a fan-in structure.
  std::vector<std::string> state(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    state[k] = "st_q" + std::to_string(k);
    b.declare(state[k]);
  }
  auto cond = [&](int k, int salt) {
    const CellKind kind = kLogicKinds[static_cast<std::size_t>(k * 5 + salt * 2) % 6];
    return b.gate(kind, {ctl(k + salt), ctl(3 * k + salt + 1)});
  };
  for (int k = 0; k < n; ++k) {
    const std::string& self = state[k];
    const std::string& prev = state[(k + n - 1) % n];
    const std::string& jump = state[(k + 2) % n];
    const std::string hold = cond(k, 0);
    const std::string go = cond(k, 1);
    using K = CellKind;
    std::string next;
    switch (k % 8) {
      case 0:
        next = b.gate(K::kOr, {b.gate(K::kAnd, {self, hold}), b.gate(K::kAnd, {prev, go})});
        break;
      case 1:
        next = b.gate(K::kNand, {b.gate(K::kNand, {self, hold}), b.gate(K::kNand, {prev, go})});
        break;
      case 2:
        next = b.gate(K::kOr, {b.gate(K::kAnd, {self, hold}), b.gate(K::kAnd, {prev, go}),
                               b.gate(K::kAnd, {jump, cond(k, 2)})});
        break;
      case 3:
        next = b.gate(K::kMux2, {b.gate(K::kAnd, {prev, go}), self, hold});
        break;
      case 4:
        next = b.gate(K::kInv, {b.gate(K::kNor, {b.gate(K::kAnd, {self, hold}),
                                                 b.gate(K::kAnd, {prev, go})})});
        break;
      case 5:
        next = b.gate(K::kOr, {b.gate(K::kAnd, {self, hold, cond(k, 2)}),
                               b.gate(K::kAnd, {prev, go})});
        break;
      case 6:
        next = b.gate(K::kNand, {b.gate(K::kNand, {self, hold}), b.gate(K::kNand, {prev, go}),
                                 b.gate(K::kNand, {jump, cond(k, 2)})});
        break;
      default:
        next = b.gate(K::kOr, {b.gate(K::kAnd, {self, b.gate(K::kInv, {go})}),
                               b.gate(K::kAnd, {prev, go})});
        break;
    }
    const std::string reg = "state_reg_" + std::to_string(k);
    b.dff(reg, next, self, /*with_reset=*/true);
    design.truth.labels[reg] = RegisterLabel::kState;
  }

  // Datapath words. Every bit of a word instantiates the same gate template
  // over its own bit slice.
  std::vector<std::vector<std::string>> words;
  int remaining = spec.data_regs;
  for (int w = 0; remaining > 0; ++w) {
    const int bits = std::min(width, remaining);
    remaining -= bits;
    std::vector<std::string> q(static_cast<std::size_t>(bits));
    for (int i = 0; i < bits; ++i) {
      q[i] = "w" + std::to_string(w) + "_q" + std::to_string(i);
      b.declare(q[i]);
    }
    const std::vector<std::string>* prev_word = words.empty() ? nullptr : &words.back();
    auto prev = [&](int i) {
      if (!prev_word) return din(i);
      const int pw = static_cast<int>(prev_word->size());
      return (*prev_word)[static_cast<std::size_t>(wrap(i, pw))];
    };
    const std::string enable = n > 0 ? state[static_cast<std::size_t>(w % n)] : ctl(w);
    WordKind kind = static_cast<WordKind>(rng.below(4));
    if (spec.fanin_max < 2 && kind == WordKind::kAdder) kind = WordKind::kPipeline;
    const bool gated = rng.below(2) == 0;
    const TreeTemplate tmpl = random_tree(rng, std::max(spec.comb_depth, 1), spec.fanin_max);

    b.set_group(w);
    for (int i = 0; i < bits; ++i) {
      std::string next;
      std::size_t cursor = 0;
      switch (kind) {
        case WordKind::kAccumulate: {
          const std::string f = build_tree(b, tmpl, static_cast<int>(tmpl.kinds.size()),
                                           {q[i], prev(i), din(i), prev(i + 1)}, cursor);
          next = b.gate(CellKind::kMux2, {q[i], f, enable});
          break;
        }
        case WordKind::kAdder: {
          const std::string a = prev(i);
          const std::string bb = din(i);
          const std::string half = b.gate(CellKind::kXor, {a, bb});
          const std::string carry = b.gate(CellKind::kAnd, {prev(i - 1), din(i - 1)});
          next = b.gate(CellKind::kXor, {half, carry});
          if (gated) next = b.gate(CellKind::kMux2, {q[i], next, enable});
          break;
        }
        case WordKind::kShift: {
          next = build_tree(b, tmpl, static_cast<int>(tmpl.kinds.size()),
                            {prev(i - 1), prev(i + 1), q[i]}, cursor);
          if (gated) next = b.gate(CellKind::kMux2, {q[i], next, enable});
          break;
        }
        case WordKind::kPipeline: {
          next = build_tree(b, tmpl, static_cast<int>(tmpl.kinds.size()),
                            {prev(i), din(i)}, cursor);
          break;
        }
      }
      const std::string reg = "w" + std::to_string(w) + "_reg_" + std::to_string(i);
      b.dff(reg, next, q[i], /*with_reset=*/false);
      design.truth.labels[reg] = RegisterLabel::kData;
    }
    words.push_back(std::move(q));
  }

  std::ostringstream v;
  v << "// generated benchmark " << spec.name << ": " << n << " state registers, "
    << spec.data_regs << " data registers\n";
  v << "module " << spec.name << " (clk, rst_n, ctl, din, dout);\n";
  v << "  input clk;\n  input rst_n;\n";
  v << "  input [" << ctl_width - 1 << ":0] ctl;\n";
  v << "  input [" << width - 1 << ":0] din;\n";
  const std::size_t out_width = words.empty() ? 1 : words.back().size();
  v << "  output [" << out_width - 1 << ":0] dout;\n";
  if (words.empty()) {
    b.buffer_to(n > 0 ? state[0] : ctl(0), "dout[0]");
  } else {
    for (std::size_t i = 0; i < out_width; ++i) {
      b.buffer_to(words.back()[i], "dout[" + std::to_string(i) + "]");
    }
  }
  b.limit_fanout(spec.max_fanout);
  for (const auto& wire : b.wires()) v << "  wire " << wire << ";\n";
  b.emit(v);
  v << "endmodule\n";

  design.verilog = v.str();
  design.gate_count = b.gates();
  design.register_count = b.registers();
  return design;
}

}  // namespace relic
