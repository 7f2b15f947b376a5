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

#include "dsl/eval.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace conceptlab::dsl {

namespace {

using BigNatural = boost::multiprecision::cpp_int;

// 64-bit arithmetic; sets `overflow` instead of wrapping.
struct WordArithmetic {
  using Value = std::uint64_t;
  bool overflow = false;

  Value from(Natural n) const { return n; }
  Value add(Value a, Value b) {
    Value r;
    overflow |= __builtin_add_overflow(a, b, &r);
    return r;
  }
  Value mul(Value a, Value b) {
    Value r;
    overflow |= __builtin_mul_overflow(a, b, &r);
    return r;
  }
  static Value sub(Value a, Value b) { return a > b ? a - b : 0; }
  static Value mod(Value a, Value b) { return b == 0 ? a : a % b; }
};

struct BigArithmetic {
  using Value = BigNatural;
  Value from(Natural n) const { return Value(n); }
  static Value add(const Value& a, const Value& b) { return a + b; }
  static Value mul(const Value& a, const Value& b) { return a * b; }
  static Value sub(const Value& a, const Value& b) { return a > b ? Value(a - b) : Value(0); }
  static Value mod(const Value& a, const Value& b) { return b == 0 ? a : Value(a % b); }
};

template <class Arith>
class Interpreter {
 public:
  using Value = typename Arith::Value;

  Interpreter(std::span<const NodeKind> nodes, Natural x, Arith& arith)
      : nodes_(nodes), x_(arith.from(x)), arith_(arith) {}

  bool predicate() {
    ++steps_;
    const NodeKind kind = nodes_[pos_++];
    switch (kind) {
      case NodeKind::eq: {
        Value a = expression();
        Value b = expression();
        return a == b;
      }
      case NodeKind::le: {
        Value a = expression();
        Value b = expression();
        return a <= b;
      }
      case NodeKind::not_: return !predicate();
      case NodeKind::and_: {
        const bool a = predicate();
        const bool b = predicate();
        return a && b;
      }
      case NodeKind::or_: {
        const bool a = predicate();
        const bool b = predicate();
        return a || b;
      }
      default: break;
    }
    return false;  // unreachable for well-formed programs
  }

  std::uint64_t steps() const { return steps_; }

 private:
  Value expression() {
    ++steps_;
    const NodeKind kind = nodes_[pos_++];
    switch (kind) {
      case NodeKind::var_x: return x_;
      case NodeKind::zero: return Value(0);
      case NodeKind::one: return Value(1);
      case NodeKind::two: return Value(2);
      case NodeKind::add: {
        Value a = expression();
        Value b = expression();
        return arith_.add(a, b);
      }
      case NodeKind::sub: {
        Value a = expression();
        Value b = expression();
        return arith_.sub(a, b);
      }
      case NodeKind::mul: {
        Value a = expression();
        Value b = expression();
        return arith_.mul(a, b);
      }
      case NodeKind::mod: {
        Value a = expression();
        Value b = expression();
        return arith_.mod(a, b);
      }
      default: break;
    }
    return Value(0);
  }

  std::span<const NodeKind> nodes_;
  std::size_t pos_ = 0;
  std::uint64_t steps_ = 0;
  Value x_;
  Arith& arith_;
};

}  // namespace

EvalResult eval_traced(const Program& program, Natural n) {
  WordArithmetic word;
  Interpreter<WordArithmetic> fast(program.nodes(), n, word);
  const bool value = fast.predicate();
  if (!word.overflow) return {value, fast.steps(), false};
  BigArithmetic big;
  Interpreter<BigArithmetic> exact(program.nodes(), n, big);
  const bool exact_value = exact.predicate();
  return {exact_value, fast.steps() + exact.steps(), true};
}

bool eval(const Program& program, Natural n) { return eval_traced(program, n).value; }

}  // namespace conceptlab::dsl
