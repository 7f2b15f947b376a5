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

// Canonical total order over all programs: by node count, then root kind in
// declaration order, then children left to right under the same order (a
// child is ordered by its own size first). Counts saturate at 2^64 - 1.
std::uint64_t count_predicates(std::size_t size);
std::uint64_t count_expressions(std::size_t size);
// Number of programs with node count strictly below `size`.
std::uint64_t programs_below_size(std::size_t size);

// The i-th program of the canonical order; enumerate(0) = (pred (eq x x)).
Program enumerate(std::uint64_t index);
// Inverse of enumerate.
std::uint64_t index_of(const Program& program);

}  // namespace conceptlab::dsl
