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
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "concept/concept.hpp"
#include "dsl/program.hpp"

namespace conceptlab::learners {

struct GoldOptions {
  // Largest enumeration index the learner may advance to.
  std::uint64_t enumeration_cap = 1'000'000;
};

struct LearnerState {
  std::uint64_t index = 0;
  std::vector<Observation> history;
  // Program evaluations spent checking compatibility.
  std::uint64_t checks = 0;
  // History length at the last index change (0 = initial guess).
  std::uint64_t last_change = 0;
};

// Guessing by enumeration: always holds the first enumerated program that is
// compatible with every observation seen so far. Unlabeled observations count
// as positive.
class GoldLearner {
 public:
  explicit GoldLearner(GoldOptions options = {});
  GoldLearner(LearnerState state, GoldOptions options);

  // Throws Error(enumeration_cap) when no compatible index <= cap exists; the
  // state is left unchanged in that case.
  void observe(const Observation& obs);

  const LearnerState& state() const noexcept { return state_; }
  const dsl::Program& guess() const noexcept { return guess_; }

 private:
  bool compatible(const dsl::Program& program, const Observation& obs);

  GoldOptions options_;
  LearnerState state_;
  dsl::Program guess_;
};

// Value-semantics form of GoldLearner::observe.
LearnerState gold_step(LearnerState state, const Observation& obs, const GoldOptions& options = {});

// Desk-scale surrogate for identification: the index has not changed during
// the last `window` observations.
bool has_converged(const LearnerState& state, std::uint64_t window);

struct OneSidedRun {
  std::uint64_t k = 0;
  std::vector<std::uint64_t> trajectory;  // guess index after each step
  // True when some guess was extension-equal to the target on 0..check_limit.
  bool ever_exact = false;
  // True when every guess accepted every positive seen so far.
  bool always_consistent = true;
};

// Feeds the one-sided positive stream of multiples of k to a Gold learner.
OneSidedRun one_sided_run(std::uint64_t k, std::uint64_t steps, dsl::Natural check_limit = 1000,
                          const GoldOptions& options = {});

struct ConvergenceRun {
  std::uint64_t target_index = 0;
  std::vector<std::uint64_t> change_steps;  // history length at each index change
  std::vector<std::uint64_t> change_indices;
  std::uint64_t final_index = 0;
  std::uint64_t steps = 0;
  std::uint64_t checks = 0;
  bool converged = false;
  // History length when the final guess was adopted.
  std::uint64_t convergence_step = 0;
  bool prefix_correct = false;
};

// Runs the learner on a stream until has_converged(window) or `max_steps`.
ConvergenceRun learn_until_converged(const dsl::Program& target, StreamMode mode,
                                     std::uint64_t max_steps, std::uint64_t window,
                                     dsl::Natural check_limit, const GoldOptions& options = {});

// True iff the Gold learner, fed `dataset` in order, ends on a guess that is
// extension-equal to `omega` on 0..check_limit.
bool is_sufficiently_exciting(std::span<const Observation> dataset, const Concept& omega,
                              dsl::Natural check_limit = 100'000, const GoldOptions& options = {});

// An alternative learner maps the observations seen so far to an enumeration
// index.
using AlternativeLearner = std::function<std::uint64_t(std::span<const Observation>)>;

struct SpeedupWitness {
  std::uint64_t tau = 0;  // number of observations
  std::uint64_t gold_index = 0;
  std::uint64_t alternative_index = 0;
  bool alternative_correct_on_target = false;
  bool gold_wrong_on_target = false;
  bool same_data_on_swapped_target = false;
  bool gold_correct_on_swapped = false;
  bool alternative_wrong_on_swapped = false;

  bool holds() const {
    return alternative_correct_on_target && gold_wrong_on_target && same_data_on_swapped_target &&
           gold_correct_on_swapped && alternative_wrong_on_swapped;
  }
};

// Looks for the first tau <= max_steps at which `alternative` is right about
// `target` while Gold is not, then swaps the target to Gold's guess and
// replays both learners on the swapped stream. Returns nullopt when the
// alternative is never ahead of Gold.
std::optional<SpeedupWitness> no_speedup_witness(const AlternativeLearner& alternative,
                                                 const dsl::Program& target,
                                                 std::uint64_t max_steps,
                                                 dsl::Natural check_limit = 10'000,
                                                 const GoldOptions& options = {});

}  // namespace conceptlab::learners
