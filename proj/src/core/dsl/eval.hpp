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

#include "dsl/program.hpp"

namespace conceptlab::dsl {

using Natural = std::uint64_t;

struct EvalResult {
  bool value = false;
  // Interpreter steps (node visits, counted once per node per pass).
  std::uint64_t steps = 0;
  // True when a 64-bit intermediate overflowed and the arbitrary-precision
  // path produced the result.
  bool used_bignum = false;
};

// Membership test: 1 iff n satisfies the predicate. Arithmetic is exact over
// the naturals: sub truncates at 0 and (mod a 0) = a.
bool eval(const Program& program, Natural n);
EvalResult eval_traced(const Program& program, Natural n);

}  // namespace conceptlab::dsl
