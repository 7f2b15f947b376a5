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

#include "dsl/enumerate.hpp"

#include <array>
#include <limits>
#include <vector>

#include "util/error.hpp"

namespace conceptlab::dsl {

namespace {

constexpr std::size_t kMaxSize = 96;
constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  return __builtin_add_overflow(a, b, &r) ? kSaturated : r;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  return __builtin_mul_overflow(a, b, &r) ? kSaturated : r;
}

bool children_are_predicates(NodeKind kind) {
  return kind == NodeKind::not_ || kind == NodeKind::and_ || kind == NodeKind::or_;
}

class Counts {
 public:
  Counts() {
    for (std::size_t s = 1; s <= kMaxSize; ++s) {
      std::uint64_t e = 0;
      for (NodeKind k : kExpressionKinds) e = sat_add(e, kind_count(k, s));
      expr_[s] = e;
      std::uint64_t p = 0;
      for (NodeKind k : kPredicateKinds) p = sat_add(p, kind_count(k, s));
      pred_[s] = p;
    }
    below_[0] = 0;
    for (std::size_t s = 1; s <= kMaxSize; ++s) below_[s] = sat_add(below_[s - 1], pred_[s - 1]);
  }

  std::uint64_t category(bool predicate, std::size_t size) const {
    if (size == 0 || size > kMaxSize) return 0;
    return predicate ? pred_[size] : expr_[size];
  }

  // Programs rooted at `kind` with total node count `size`.
  std::uint64_t kind_count(NodeKind kind, std::size_t size) const {
    if (size == 0 || size > kMaxSize) return 0;
    const bool child_pred = children_are_predicates(kind);
    switch (arity(kind)) {
      case 0: return size == 1 ? 1 : 0;
      case 1: return category(child_pred, size - 1);
      default: {
        std::uint64_t total = 0;
        for (std::size_t a = 1; a + 1 < size; ++a) {
          total = sat_add(total, sat_mul(category(child_pred, a), category(child_pred, size - 1 - a)));
        }
        return total;
      }
    }
  }

  std::uint64_t below(std::size_t size) const { return size > kMaxSize ? kSaturated : below_[size]; }

 private:
  std::array<std::uint64_t, kMaxSize + 1> expr_{};
  std::array<std::uint64_t, kMaxSize + 1> pred_{};
  std::array<std::uint64_t, kMaxSize + 2> below_{};
};

const Counts& counts() {
  static const Counts instance;
  return instance;
}

void unrank(bool predicate, std::size_t size, std::uint64_t rank, std::vector<NodeKind>& out) {
  const Counts& c = counts();
  const std::span<const NodeKind> kinds =
      predicate ? std::span<const NodeKind>(kPredicateKinds) : std::span<const NodeKind>(kExpressionKinds);
  for (NodeKind kind : kinds) {
    const std::uint64_t here = c.kind_count(kind, size);
    if (rank >= here) {
      rank -= here;
      continue;
    }
    out.push_back(kind);
    const bool child_pred = children_are_predicates(kind);
    switch (arity(kind)) {
      case 0: return;
      case 1: unrank(child_pred, size - 1, rank, out); return;
      default:
        for (std::size_t a = 1; a + 1 < size; ++a) {
          const std::uint64_t right_count = c.category(child_pred, size - 1 - a);
          const std::uint64_t block = sat_mul(c.category(child_pred, a), right_count);
          if (rank >= block) {
            rank -= block;
            continue;
          }
          unrank(child_pred, a, rank / right_count, out);
          unrank(child_pred, size - 1 - a, rank % right_count, out);
          return;
        }
    }
    break;
  }
  throw Error(ErrorCode::invalid_argument, "enumeration rank out of range");
}

// Rank of the subtree at nodes[pos] among trees of its category and size.
std::uint64_t rank_of(std::span<const NodeKind> nodes, std::size_t pos) {
  const Counts& c = counts();
  const NodeKind kind = nodes[pos];
  const std::size_t end = subtree_end(nodes, pos);
  const std::size_t size = end - pos;
  const bool predicate = is_predicate(kind);
  const std::span<const NodeKind> kinds =
      predicate ? std::span<const NodeKind>(kPredicateKinds) : std::span<const NodeKind>(kExpressionKinds);
  std::uint64_t rank = 0;
  for (NodeKind k : kinds) {
    if (k == kind) break;
    rank = sat_add(rank, c.kind_count(k, size));
  }
  const bool child_pred = children_are_predicates(kind);
  switch (arity(kind)) {
    case 0: return rank;
    case 1: return sat_add(rank, rank_of(nodes, pos + 1));
    default: {
      const std::size_t left_end = subtree_end(nodes, pos + 1);
      const std::size_t left_size = left_end - pos - 1;
      for (std::size_t a = 1; a < left_size; ++a) {
        rank = sat_add(rank, sat_mul(c.category(child_pred, a), c.category(child_pred, size - 1 - a)));
      }
      const std::uint64_t right_count = c.category(child_pred, size - 1 - left_size);
      rank = sat_add(rank, sat_add(sat_mul(rank_of(nodes, pos + 1), right_count),
                                   rank_of(nodes, left_end)));
      return rank;
    }
  }
}

}  // namespace

std::uint64_t count_predicates(std::size_t size) { return counts().category(true, size); }
std::uint64_t count_expressions(std::size_t size) { return counts().category(false, size); }
std::uint64_t programs_below_size(std::size_t size) { return counts().below(size); }

Program enumerate(std::uint64_t index) {
  const Counts& c = counts();
  std::size_t size = 1;
  while (size < kMaxSize && c.below(size + 1) <= index) ++size;
  std::vector<NodeKind> nodes;
  nodes.reserve(size);
  unrank(true, size, index - c.below(size), nodes);
  return Program(std::move(nodes));
}

std::uint64_t index_of(const Program& program) {
  return sat_add(counts().below(program.size()), rank_of(program.nodes(), 0));
}

}  // namespace conceptlab::dsl
