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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dsl/eval.hpp"
#include "dsl/program.hpp"

namespace conceptlab {

using dsl::Natural;

// A concept over the naturals, known through its discriminative encoding. The
// extension on 0..cache_limit-1 is memoized.
class Concept {
 public:
  explicit Concept(dsl::Program encoding, Natural cache_limit = 4096);

  const dsl::Program& encoding() const noexcept { return encoding_; }
  bool contains(Natural n) const;
  Natural cache_limit() const noexcept { return cache_.size(); }

 private:
  dsl::Program encoding_;
  std::vector<bool> cache_;
};

// Extension equality on the finite prefix 0..limit (inclusive). Exact
// equivalence is not decided.
bool extension_equal_on_prefix(const dsl::Program& a, const dsl::Program& b, Natural limit);

struct Observation {
  Natural x = 0;
  std::optional<bool> y;  // absent for unlabeled streams

  friend bool operator==(const Observation&, const Observation&) = default;
};

enum class StreamMode { complete_supervised, one_sided_positive };

std::string_view stream_mode_name(StreamMode mode);
StreamMode parse_stream_mode(std::string_view name);

// Observation mechanism of a concept in canonical (increasing) data order.
// complete_supervised emits (0,y0), (1,y1), ...; one_sided_positive emits the
// strictly positive members in increasing order with label 1.
class EffluxStream {
 public:
  EffluxStream(Concept target, StreamMode mode, Natural search_budget = 1'000'000);

  // Throws Error(exhausted) on a one-sided stream when no further member is
  // found within `search_budget` candidates past the cursor.
  Observation next();

  Natural cursor() const noexcept { return cursor_; }
  StreamMode mode() const noexcept { return mode_; }
  const Concept& target() const noexcept { return concept_; }

 private:
  Concept concept_;
  StreamMode mode_;
  Natural cursor_ = 0;
  Natural search_budget_;
};

struct BudgetExceeded {
  Natural scanned = 0;
};

// Generative encoding obtained from a discriminator: the k-th successful call
// returns the k-th member of the extension in increasing order. Each call scans
// at most `budget` candidates; progress is kept across calls.
class Generator {
 public:
  explicit Generator(dsl::Program discriminator) : program_(std::move(discriminator)) {}

  std::variant<Natural, BudgetExceeded> next(Natural budget);
  Natural position() const noexcept { return next_candidate_; }

 private:
  dsl::Program program_;
  Natural next_candidate_ = 0;
};

Generator discriminator_to_generator(const dsl::Program& program);

std::string observations_to_csv(const std::vector<Observation>& observations);
std::string observations_to_jsonl(const std::vector<Observation>& observations);

}  // namespace conceptlab
