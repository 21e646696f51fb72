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

#include "relic/verilog_parser.h"

#include <cctype>
#include <map>
#include <optional>
#include <set>

#include "relic/error.h"

namespace relic {
namespace {

struct Token {
  enum class Type { kIdent, kNumber, kLiteral, kSymbol, kEnd };

  Type type = Type::kEnd;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    for (;;) {
      skip_blank();
      Token tok;
      tok.line = line_;
      tok.column = column_;
      if (pos_ >= text_.size()) {
        tokens.push_back(tok);
        return tokens;
      }
      char c = text_[pos_];
      if (c == '\\') {
        // Escaped identifier runs to the next whitespace.
        advance();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
          advance();
        }
        if (pos_ == start) fail(tok, "empty escaped identifier");
        tok.type = Token::Type::kIdent;
        tok.text = std::string(text_.substr(start, pos_ - start));
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) advance();
        tok.type = Token::Type::kIdent;
        tok.text = std::string(text_.substr(start, pos_ - start));
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          advance();
        }
        if (pos_ < text_.size() && text_[pos_] == '\'') {
          advance();
          while (pos_ < text_.size() &&
                 std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
            advance();
          }
          tok.type = Token::Type::kLiteral;
        } else {
          tok.type = Token::Type::kNumber;
        }
        tok.text = std::string(text_.substr(start, pos_ - start));
      } else if (std::string_view("();,.[]:={}#").find(c) !=
                 std::string_view::npos) {
        advance();
        tok.type = Token::Type::kSymbol;
        tok.text = std::string(1, c);
      } else {
        fail(tok, std::string("unexpected character '") + c + "'");
      }
      tokens.push_back(std::move(tok));
    }
  }

 private:
  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
  }

  [[noreturn]] static void fail(const Token& at, const std::string& msg) {
    throw InputError("syntax error at " + std::to_string(at.line) + ":" +
                     std::to_string(at.column) + ": " + msg);
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (text_.substr(pos_, 2) == "//") {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (text_.substr(pos_, 2) == "/*" ||
                 text_.substr(pos_, 2) == "(*") {
        std::string_view close = text_[pos_] == '/' ? "*/" : "*)";
        Token at;
        at.line = line_;
        at.column = column_;
        advance();
        advance();
        while (pos_ < text_.size() && text_.substr(pos_, 2) != close) advance();
        if (pos_ >= text_.size()) fail(at, "unterminated comment");
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

struct Range {
  int msb = 0;
  int lsb = 0;
};

struct Declaration {
  std::optional<Range> range;
  NetId first = 0;  // id of the bit at index `lsb` (or the scalar)
  enum class Dir { kWire, kInput, kOutput } dir = Dir::kWire;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  RawNetlist run() {
    expect_keyword("module");
    raw_.name = expect_ident("module name");
    std::vector<std::pair<std::string, Token>> header_ports;
    if (accept("(")) {
      if (!accept(")")) {
        do {
          if (peek_is_direction()) {
            parse_declaration(/*ansi=*/true);
          } else {
            const Token& at = peek();
            header_ports.emplace_back(expect_ident("port name"), at);
          }
        } while (accept(","));
        expect(")");
      }
    }
    expect(";");

    while (!peek_keyword("endmodule")) {
      const Token& tok = peek();
      if (tok.type == Token::Type::kEnd) fail(tok, "missing 'endmodule'");
      if (peek_is_direction() || peek_keyword("wire")) {
        parse_declaration(/*ansi=*/false);
      } else if (peek_keyword("assign") || peek_keyword("always") ||
                 peek_keyword("initial") || peek_keyword("reg") ||
                 peek_keyword("parameter") || peek_keyword("generate")) {
        fail(tok, "unsupported construct '" + tok.text + "'");
      } else if (tok.type == Token::Type::kIdent) {
        parse_instance();
      } else {
        fail(tok, "unexpected '" + tok.text + "'");
      }
    }
    expect_keyword("endmodule");
    if (peek().type != Token::Type::kEnd) {
      fail(peek(), "only one module per file is supported");
    }

    for (const auto& [name, at] : header_ports) {
      auto it = decls_.find(name);
      if (it == decls_.end() || it->second.dir == Declaration::Dir::kWire) {
        fail(at, "port '" + name + "' lacks an input/output declaration");
      }
    }
    return std::move(raw_);
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  const Token& next() {
    const Token& tok = tokens_[pos_];
    if (tok.type != Token::Type::kEnd) ++pos_;
    return tok;
  }

  [[noreturn]] static void fail(const Token& at, const std::string& msg) {
    throw InputError("syntax error at " + std::to_string(at.line) + ":" +
                     std::to_string(at.column) + ": " + msg);
  }

  bool peek_keyword(std::string_view kw) const {
    return peek().type == Token::Type::kIdent && peek().text == kw;
  }

  bool peek_is_direction() const {
    return peek_keyword("input") || peek_keyword("output") ||
           peek_keyword("inout");
  }

  bool accept(std::string_view sym) {
    if (peek().type == Token::Type::kSymbol && peek().text == sym) {
      next();
      return true;
    }
    return false;
  }

  void expect(std::string_view sym) {
    if (!accept(sym)) {
      fail(peek(), "expected '" + std::string(sym) + "', found '" +
                       peek().text + "'");
    }
  }

  void expect_keyword(std::string_view kw) {
    if (!peek_keyword(kw)) {
      fail(peek(), "expected '" + std::string(kw) + "', found '" +
                       peek().text + "'");
    }
    next();
  }

  std::string expect_ident(std::string_view what) {
    if (peek().type != Token::Type::kIdent) {
      fail(peek(), "expected " + std::string(what) + ", found '" +
                       peek().text + "'");
    }
    return next().text;
  }

  int expect_number() {
    if (peek().type != Token::Type::kNumber) {
      fail(peek(), "expected number, found '" + peek().text + "'");
    }
    return std::stoi(next().text);
  }

  void parse_declaration(bool ansi) {
    const Token& start = next();
    Declaration::Dir dir = Declaration::Dir::kWire;
    if (start.text == "input") dir = Declaration::Dir::kInput;
    if (start.text == "output") dir = Declaration::Dir::kOutput;
    if (start.text == "inout") fail(start, "inout ports are not supported");
    if (dir != Declaration::Dir::kWire && peek_keyword("wire")) next();

    std::optional<Range> range;
    if (accept("[")) {
      Range r;
      r.msb = expect_number();
      expect(":");
      r.lsb = expect_number();
      expect("]");
      range = r;
    }

    auto declare_one = [&] {
      const Token& at = peek();
      std::string name = expect_ident("net name");
      declare(name, range, dir, at);
    };
    declare_one();
    // In an ANSI header the comma separates ports, not names.
    if (ansi) return;
    while (accept(",")) declare_one();
    expect(";");
  }

  void declare(const std::string& name, const std::optional<Range>& range,
               Declaration::Dir dir, const Token& at) {
    auto it = decls_.find(name);
    if (it != decls_.end()) {
      Declaration& prior = it->second;
      bool same_shape =
          prior.range.has_value() == range.has_value() &&
          (!range || (prior.range->msb == range->msb &&
                      prior.range->lsb == range->lsb));
      // `output y; wire y;` is common in synthesized netlists.
      bool benign = same_shape && (dir == Declaration::Dir::kWire ||
                                   prior.dir == Declaration::Dir::kWire);
      if (!benign) fail(at, "net '" + name + "' declared twice");
      if (prior.dir == Declaration::Dir::kWire) {
        prior.dir = dir;
        record_port(prior);
      }
      return;
    }
    Declaration decl;
    decl.range = range;
    decl.dir = dir;
    decl.first = raw_.nets.size();
    if (range) {
      int lo = std::min(range->msb, range->lsb);
      int hi = std::max(range->msb, range->lsb);
      for (int bit = lo; bit <= hi; ++bit) {
        raw_.nets.push_back(name + "[" + std::to_string(bit) + "]");
      }
    } else {
      raw_.nets.push_back(name);
    }
    auto& stored = decls_.emplace(name, decl).first->second;
    record_port(stored);
  }

  void record_port(const Declaration& decl) {
    if (decl.dir == Declaration::Dir::kWire) return;
    auto& list = decl.dir == Declaration::Dir::kInput ? raw_.inputs
                                                      : raw_.outputs;
    std::size_t width = 1;
    if (decl.range) {
      width = static_cast<std::size_t>(
          std::abs(decl.range->msb - decl.range->lsb) + 1);
    }
    for (std::size_t i = 0; i < width; ++i) list.push_back(decl.first + i);
  }

  PinBinding parse_connection(std::string pin) {
    PinBinding binding;
    binding.pin = std::move(pin);
    const Token& at = peek();
    if (at.type == Token::Type::kSymbol && at.text == ")") {
      binding.kind = PinBinding::Kind::kOpen;
      return binding;
    }
    if (at.type == Token::Type::kLiteral) {
      next();
      if (at.text == "1'b0" || at.text == "1'h0" || at.text == "1'd0") {
        binding.kind = PinBinding::Kind::kConst0;
      } else if (at.text == "1'b1" || at.text == "1'h1" || at.text == "1'd1") {
        binding.kind = PinBinding::Kind::kConst1;
      } else {
        fail(at, "unsupported literal '" + at.text + "'");
      }
      return binding;
    }
    if (at.type == Token::Type::kSymbol && at.text == "{") {
      fail(at, "concatenations are not supported");
    }
    std::string name = expect_ident("net name");
    auto it = decls_.find(name);
    if (it == decls_.end()) fail(at, "reference to undeclared net '" + name + "'");
    const Declaration& decl = it->second;
    if (accept("[")) {
      const Token& idx_tok = peek();
      int idx = expect_number();
      expect("]");
      if (!decl.range) fail(idx_tok, "bit-select on scalar net '" + name + "'");
      int lo = std::min(decl.range->msb, decl.range->lsb);
      int hi = std::max(decl.range->msb, decl.range->lsb);
      if (idx < lo || idx > hi) {
        fail(idx_tok, "index " + std::to_string(idx) + " out of range for '" +
                          name + "'");
      }
      binding.net = decl.first + static_cast<NetId>(idx - lo);
    } else {
      if (decl.range && decl.range->msb != decl.range->lsb) {
        fail(at, "multi-bit net '" + name + "' connected to a single pin");
      }
      binding.net = decl.first;
    }
    return binding;
  }

  void parse_instance() {
    RawInstance inst;
    const Token& type_tok = next();
    inst.cell_type = type_tok.text;
    inst.line = type_tok.line;
    if (peek().type == Token::Type::kSymbol && peek().text == "#") {
      fail(peek(), "parameterized instances are not supported");
    }
    inst.name = expect_ident("instance name");
    expect("(");
    std::set<std::string> seen;
    if (!accept(")")) {
      do {
        if (!(peek().type == Token::Type::kSymbol && peek().text == ".")) {
          fail(peek(), "positional port connections are not supported (instance '" +
                           inst.name + "')");
        }
        next();
        const Token& pin_tok = peek();
        std::string pin = expect_ident("pin name");
        if (!seen.insert(pin).second) {
          fail(pin_tok, "pin '" + pin + "' connected twice");
        }
        expect("(");
        inst.pins.push_back(parse_connection(std::move(pin)));
        expect(")");
      } while (accept(","));
      expect(")");
    }
    expect(";");
    if (!instance_names_.insert(inst.name).second) {
      fail(type_tok, "duplicate instance name '" + inst.name + "'");
    }
    raw_.instances.push_back(std::move(inst));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  RawNetlist raw_;
  std::map<std::string, Declaration> decls_;
  std::set<std::string> instance_names_;
};

}  // namespace

RawNetlist parse_netlist(std::string_view text) {
  return Parser(Lexer(text).run()).run();
}

}  // namespace relic
