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

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace conceptlab::dsl {

// Node kinds, listed in enumeration order within each category.
enum class NodeKind : std::uint8_t {
  // predicates
  eq,
  le,
  not_,
  and_,
  or_,
  // expressions
  var_x,
  zero,
  one,
  two,
  add,
  sub,
  mul,
  mod,
};

inline constexpr NodeKind kPredicateKinds[] = {NodeKind::eq, NodeKind::le, NodeKind::not_,
                                               NodeKind::and_, NodeKind::or_};
inline constexpr NodeKind kExpressionKinds[] = {NodeKind::var_x, NodeKind::zero, NodeKind::one,
                                                NodeKind::two,   NodeKind::add,  NodeKind::sub,
                                                NodeKind::mul,   NodeKind::mod};

bool is_predicate(NodeKind kind) noexcept;
int arity(NodeKind kind) noexcept;
std::string_view symbol(NodeKind kind) noexcept;

// A predicate over the naturals, stored as the prefix (Polish) traversal of its
// AST. Arities are fixed per kind, so the prefix sequence determines the tree.
// Instances are immutable once built and always well-formed.
class Program {
 public:
  // Throws Error(invalid_argument) unless `prefix` is exactly one well-typed
  // predicate tree.
  explicit Program(std::vector<NodeKind> prefix);

  std::span<const NodeKind> nodes() const noexcept { return nodes_; }
  // Node count of the predicate tree (the `pred` wrapper is not a node).
  std::size_t size() const noexcept { return nodes_.size(); }

  // Canonical text form, e.g. "(pred (eq (mod x 2) 0))".
  std::string to_string() const;

  friend bool operator==(const Program&, const Program&) = default;
  friend auto operator<=>(const Program&, const Program&) = default;

 private:
  std::vector<NodeKind> nodes_;
};

// End (one past) of the subtree rooted at `begin` in a prefix sequence.
std::size_t subtree_end(std::span<const NodeKind> nodes, std::size_t begin);

// Parses the canonical prefix form. Any ASCII whitespace separates tokens.
// Throws Error with codes syntax / arity / unknown_symbol and the byte offset.
Program parse(std::string_view text);

// Commonly used programs.
Program all_naturals();  // (pred (eq x x))
// (pred (eq (mod x K) 0)) with K spelled using the constants 1 and 2.
Program multiples_of(std::uint64_t k);
// Expression nodes (prefix) spelling the constant k with 0, 1, 2, add and mul.
std::vector<NodeKind> constant_expression(std::uint64_t k);

}  // namespace conceptlab::dsl
