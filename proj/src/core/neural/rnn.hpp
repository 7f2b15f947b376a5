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
#include <vector>

namespace conceptlab::neural {

// s = (counter, parity flag, end-of-sequence tag).
struct ParityRnnState {
  std::int64_t counter = 0;
  int parity = 0;
  int end = 0;

  friend bool operator==(const ParityRnnState&, const ParityRnnState&) = default;
};

// s' = (n - 1, 1 - a, 1 - sign(n)) with sign(0) = 0.
ParityRnnState rnn_step(const ParityRnnState& s);

struct RnnParityResult {
  bool even = false;  // terminal parity flag; 1 means even
  std::uint64_t steps = 0;
  ParityRnnState terminal;
};

// Iterates from (n, 0, 0) until the end tag is 1.
RnnParityResult rnn_parity(std::uint64_t n);

// Terminal flag and step count for every start 0..max_n. Each state
// (counter, flag) is stepped once; a start's result is read off its
// successor's, so the table costs O(max_n) steps instead of O(max_n^2).
struct RnnParityTable {
  std::vector<std::uint8_t> even;
  std::vector<std::uint64_t> steps;
};
RnnParityTable rnn_parity_table(std::uint64_t max_n);

}  // namespace conceptlab::neural
