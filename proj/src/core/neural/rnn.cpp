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

#include "neural/rnn.hpp"

#include <array>

namespace conceptlab::neural {

namespace {
int sign(std::int64_t v) { return (v > 0) - (v < 0); }
}  // namespace

ParityRnnState rnn_step(const ParityRnnState& s) {
  return {s.counter - 1, 1 - s.parity, 1 - sign(s.counter)};
}

RnnParityResult rnn_parity(std::uint64_t n) {
  ParityRnnState s{static_cast<std::int64_t>(n), 0, 0};
  std::uint64_t steps = 0;
  do {
    s = rnn_step(s);
    ++steps;
  } while (s.end != 1);
  return {s.parity == 1, steps, s};
}

RnnParityTable rnn_parity_table(std::uint64_t max_n) {
  // result[flag][counter] for states (counter, flag, 0), counter in 0..max_n.
  std::array<std::vector<std::uint8_t>, 2> terminal_flag;
  std::array<std::vector<std::uint64_t>, 2> steps;
  for (int f = 0; f < 2; ++f) {
    terminal_flag[f].resize(max_n + 1);
    steps[f].resize(max_n + 1);
  }
  for (std::uint64_t c = 0; c <= max_n; ++c) {
    for (int f = 0; f < 2; ++f) {
      const ParityRnnState next = rnn_step({static_cast<std::int64_t>(c), f, 0});
      if (next.end == 1) {
        terminal_flag[f][c] = static_cast<std::uint8_t>(next.parity);
        steps[f][c] = 1;
      } else {
        // next = (c - 1, 1 - f, 0), already tabulated.
        terminal_flag[f][c] = terminal_flag[next.parity][static_cast<std::uint64_t>(next.counter)];
        steps[f][c] = 1 + steps[next.parity][static_cast<std::uint64_t>(next.counter)];
      }
    }
  }
  return {std::move(terminal_flag[0]), std::move(steps[0])};
}

}  // namespace conceptlab::neural
