// Copyright 2026 The conceptlab Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dsl/program.hpp"

#include <cctype>
#include <utility>

#include "util/error.hpp"

namespace conceptlab::dsl {

bool is_predicate(NodeKind kind) noexcept { return kind <= NodeKind::or_; }

int arity(NodeKind kind) noexcept {
  switch (kind) {
    case NodeKind::not_: return 1;
    case NodeKind::var_x:
    case NodeKind::zero:
    case NodeKind::one:
    case NodeKind::two: return 0;
    default: return 2;
  }
}

std::string_view symbol(NodeKind kind) noexcept {
  switch (kind) {
    case NodeKind::eq: return "eq";
    case NodeKind::le: return "le";
    case NodeKind::not_: return "not";
    case NodeKind::and_: return "and";
    case NodeKind::or_: return "or";
    case NodeKind::var_x: return "x";
    case NodeKind::zero: return "0";
    case NodeKind::one: return "1";
    case NodeKind::two: return "2";
    case NodeKind::add: return "add";
    case NodeKind::sub: return "sub";
    case NodeKind::mul: return "mul";
    case NodeKind::mod: return "mod";
  }
  return "?";
}

namespace {

// Child categories: eq/le take expressions, not/and/or take predicates.
bool children_are_predicates(NodeKind kind) {
  return kind == NodeKind::not_ || kind == NodeKind::and_ || kind == NodeKind::or_;
}

// Returns the end of a well-typed subtree of the requested category starting
// at `pos`, or npos.
std::size_t check_subtree(std::span<const NodeKind> nodes, std::size_t pos, bool want_predicate) {
  if (pos >= nodes.size()) return std::string::npos;
  const NodeKind kind = nodes[pos];
  if (is_predicate(kind) != want_predicate) return std::string::npos;
  const bool child_pred = children_are_predicates(kind);
  std::size_t next = pos + 1;
  for (int i = 0; i < arity(kind); ++i) {
    next = check_subtree(nodes, next, child_pred);
    if (next == std::string::npos) return next;
  }
  return next;
}

void render(std::span<const NodeKind> nodes, std::size_t& pos, std::string& out) {
  const NodeKind kind = nodes[pos++];
  if (arity(kind) == 0) {
    out += symbol(kind);
    return;
  }
  out += '(';
  out += symbol(kind);
  for (int i = 0; i < arity(kind); ++i) {
    out += ' ';
    render(nodes, pos, out);
  }
  out += ')';
}

}  // namespace

Program::Program(std::vector<NodeKind> prefix) : nodes_(std::move(prefix)) {
  const std::size_t end = check_subtree(nodes_, 0, true);
  require(end == nodes_.size() && !nodes_.empty(), "malformed program node sequence");
}

std::string Program::to_string() const {
  std::string out = "(pred ";
  std::size_t pos = 0;
  render(nodes_, pos, out);
  out += ')';
  return out;
}

std::size_t subtree_end(std::span<const NodeKind> nodes, std::size_t begin) {
  std::size_t pending = 1;
  std::size_t pos = begin;
  while (pending > 0) {
    pending += static_cast<std::size_t>(arity(nodes[pos])) - 1;
    ++pos;
  }
  return pos;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Program parse_program() {
    skip_ws();
    expect_open();
    const Token head = read_symbol();
    if (head.text != "pred") {
      if (lookup(head.text) == nullptr) unknown(head);
      fail(ErrorCode::syntax, "expected 'pred' at top level", head.offset);
    }
    std::vector<NodeKind> nodes;
    parse_node(nodes, true);
    close_form(head.offset, "pred");
    skip_ws();
    if (pos_ != text_.size()) fail(ErrorCode::syntax, "trailing input after program", pos_);
    return Program(std::move(nodes));
  }

 private:
  struct Token {
    std::string_view text;
    std::size_t offset;
  };

  [[noreturn]] void fail(ErrorCode code, const std::string& what, std::size_t offset) const {
    throw Error(code, what + " at byte " + std::to_string(offset), offset);
  }

  [[noreturn]] void unknown(const Token& t) const {
    fail(ErrorCode::unknown_symbol, "unknown symbol '" + std::string(t.text) + "'", t.offset);
  }

  static const NodeKind* lookup(std::string_view name) {
    static constexpr NodeKind all[] = {
        NodeKind::eq,  NodeKind::le,   NodeKind::not_, NodeKind::and_, NodeKind::or_,
        NodeKind::var_x, NodeKind::zero, NodeKind::one, NodeKind::two, NodeKind::add,
        NodeKind::sub, NodeKind::mul,  NodeKind::mod};
    for (const NodeKind& k : all) {
      if (symbol(k) == name) return &k;
    }
    return nullptr;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect_open() {
    if (pos_ >= text_.size()) fail(ErrorCode::syntax, "unexpected end of input, expected '('", pos_);
    if (text_[pos_] != '(') fail(ErrorCode::syntax, "expected '('", pos_);
    ++pos_;
  }

  Token read_symbol() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c))) break;
      ++pos_;
    }
    if (pos_ == start) {
      if (pos_ >= text_.size()) fail(ErrorCode::syntax, "unexpected end of input", pos_);
      fail(ErrorCode::syntax, std::string("unexpected '") + text_[pos_] + "'", pos_);
    }
    return {text_.substr(start, pos_ - start), start};
  }

  // Consumes the ')' closing a form opened at `form_offset`.
  void close_form(std::size_t form_offset, std::string_view name) {
    skip_ws();
    if (pos_ >= text_.size()) fail(ErrorCode::syntax, "unbalanced '('", form_offset);
    if (text_[pos_] != ')') {
      fail(ErrorCode::arity, "too many arguments to '" + std::string(name) + "'", pos_);
    }
    ++pos_;
  }

  void parse_node(std::vector<NodeKind>& out, bool want_predicate) {
    skip_ws();
    if (pos_ >= text_.size()) fail(ErrorCode::syntax, "unexpected end of input", pos_);
    if (text_[pos_] == ')') {
      fail(ErrorCode::arity, "missing argument", pos_);
    }
    if (text_[pos_] == '(') {
      const std::size_t open = pos_;
      ++pos_;
      const Token head = read_symbol();
      const NodeKind* kind = lookup(head.text);
      if (kind == nullptr) unknown(head);
      if (arity(*kind) == 0) {
        fail(ErrorCode::syntax, "'" + std::string(head.text) + "' cannot be applied", head.offset);
      }
      if (is_predicate(*kind) != want_predicate) {
        fail(ErrorCode::syntax,
             std::string(want_predicate ? "expected a predicate" : "expected an expression") +
                 ", got '" + std::string(head.text) + "'",
             head.offset);
      }
      out.push_back(*kind);
      const bool child_pred = children_are_predicates(*kind);
      for (int i = 0; i < arity(*kind); ++i) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ')') {
          fail(ErrorCode::arity,
               "'" + std::string(head.text) + "' expects " + std::to_string(arity(*kind)) +
                   " argument(s), got " + std::to_string(i),
               open);
        }
        parse_node(out, child_pred);
      }
      close_form(open, head.text);
      return;
    }
    const Token atom = read_symbol();
    const NodeKind* kind = lookup(atom.text);
    if (kind == nullptr) unknown(atom);
    if (arity(*kind) != 0) {
      fail(ErrorCode::arity, "'" + std::string(atom.text) + "' used without arguments", atom.offset);
    }
    if (want_predicate) fail(ErrorCode::syntax, "expected a predicate, got an atom", atom.offset);
    out.push_back(*kind);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Program parse(std::string_view text) { return Parser(text).parse_program(); }

Program all_naturals() { return Program({NodeKind::eq, NodeKind::var_x, NodeKind::var_x}); }

std::vector<NodeKind> constant_expression(std::uint64_t k) {
  switch (k) {
    case 0: return {NodeKind::zero};
    case 1: return {NodeKind::one};
    case 2: return {NodeKind::two};
    case 3: return {NodeKind::add, NodeKind::one, NodeKind::two};
    case 4: return {NodeKind::add, NodeKind::two, NodeKind::two};
    default: break;
  }
  // k = 2 * (k / 2) + (k % 2)
  std::vector<NodeKind> half = constant_expression(k / 2);
  std::vector<NodeKind> out;
  if (k % 2 == 1) {
    out.push_back(NodeKind::add);
    out.push_back(NodeKind::one);
  }
  out.push_back(NodeKind::mul);
  out.push_back(NodeKind::two);
  out.insert(out.end(), half.begin(), half.end());
  return out;
}

Program multiples_of(std::uint64_t k) {
  std::vector<NodeKind> nodes{NodeKind::eq, NodeKind::mod, NodeKind::var_x};
  const auto c = constant_expression(k);
  nodes.insert(nodes.end(), c.begin(), c.end());
  nodes.push_back(NodeKind::zero);
  return Program(std::move(nodes));
}

}  // namespace conceptlab::dsl
