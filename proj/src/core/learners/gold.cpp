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

#include "learners/gold.hpp"

#include "dsl/enumerate.hpp"
#include "dsl/eval.hpp"
#include "util/error.hpp"

namespace conceptlab::learners {

GoldLearner::GoldLearner(GoldOptions options)
    : options_(options), guess_(dsl::enumerate(0)) {}

GoldLearner::GoldLearner(LearnerState state, GoldOptions options)
    : options_(options), state_(std::move(state)), guess_(dsl::enumerate(state_.index)) {}

bool GoldLearner::compatible(const dsl::Program& program, const Observation& obs) {
  ++state_.checks;
  return dsl::eval(program, obs.x) == obs.y.value_or(true);
}

void GoldLearner::observe(const Observation& obs) {
  if (compatible(guess_, obs)) {
    state_.history.push_back(obs);
    return;
  }
  // Every index below the current one already contradicts a prefix of the
  // history, so the search resumes just past it.
  for (std::uint64_t candidate = state_.index + 1; candidate <= options_.enumeration_cap;
       ++candidate) {
    dsl::Program program = dsl::enumerate(candidate);
    if (!compatible(program, obs)) continue;
    bool ok = true;
    for (const Observation& past : state_.history) {
      if (!compatible(program, past)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    state_.history.push_back(obs);
    state_.index = candidate;
    state_.last_change = state_.history.size();
    guess_ = std::move(program);
    return;
  }
  throw Error(ErrorCode::enumeration_cap,
              "no compatible program with index <= " + std::to_string(options_.enumeration_cap));
}

LearnerState gold_step(LearnerState state, const Observation& obs, const GoldOptions& options) {
  GoldLearner learner(std::move(state), options);
  learner.observe(obs);
  return learner.state();
}

bool has_converged(const LearnerState& state, std::uint64_t window) {
  require(window >= 1, "convergence window must be >= 1");
  return state.history.size() >= state.last_change + window;
}

OneSidedRun one_sided_run(std::uint64_t k, std::uint64_t steps, dsl::Natural check_limit,
                          const GoldOptions& options) {
  require(k >= 1, "k must be >= 1");
  const dsl::Program target = dsl::multiples_of(k);
  EffluxStream stream(Concept(target), StreamMode::one_sided_positive);
  GoldLearner learner(options);
  OneSidedRun run;
  run.k = k;
  run.trajectory.reserve(steps);
  std::uint64_t checked_index = ~std::uint64_t{0};
  for (std::uint64_t t = 0; t < steps; ++t) {
    learner.observe(stream.next());
    const std::uint64_t index = learner.state().index;
    run.trajectory.push_back(index);
    if (index != checked_index) {
      checked_index = index;
      if (extension_equal_on_prefix(learner.guess(), target, check_limit)) run.ever_exact = true;
    }
  }
  for (const Observation& o : learner.state().history) {
    if (!dsl::eval(learner.guess(), o.x)) run.always_consistent = false;
  }
  return run;
}

ConvergenceRun learn_until_converged(const dsl::Program& target, StreamMode mode,
                                     std::uint64_t max_steps, std::uint64_t window,
                                     dsl::Natural check_limit, const GoldOptions& options) {
  EffluxStream stream(Concept(target), mode);
  GoldLearner learner(options);
  ConvergenceRun run;
  run.target_index = dsl::index_of(target);
  while (run.steps < max_steps) {
    const std::uint64_t before = learner.state().index;
    learner.observe(stream.next());
    ++run.steps;
    if (learner.state().index != before) {
      run.change_steps.push_back(run.steps);
      run.change_indices.push_back(learner.state().index);
    }
    if (has_converged(learner.state(), window)) {
      run.converged = true;
      break;
    }
  }
  run.final_index = learner.state().index;
  run.checks = learner.state().checks;
  run.convergence_step = learner.state().last_change;
  run.prefix_correct = extension_equal_on_prefix(learner.guess(), target, check_limit);
  return run;
}

bool is_sufficiently_exciting(std::span<const Observation> dataset, const Concept& omega,
                              dsl::Natural check_limit, const GoldOptions& options) {
  GoldLearner learner(options);
  for (const Observation& o : dataset) learner.observe(o);
  return extension_equal_on_prefix(learner.guess(), omega.encoding(), check_limit);
}

namespace {

std::vector<Observation> complete_prefix(const dsl::Program& program, std::uint64_t length) {
  std::vector<Observation> out;
  out.reserve(length);
  for (dsl::Natural x = 0; x < length; ++x) out.push_back({x, dsl::eval(program, x)});
  return out;
}

}  // namespace

std::optional<SpeedupWitness> no_speedup_witness(const AlternativeLearner& alternative,
                                                 const dsl::Program& target,
                                                 std::uint64_t max_steps,
                                                 dsl::Natural check_limit,
                                                 const GoldOptions& options) {
  const std::vector<Observation> data = complete_prefix(target, max_steps);
  GoldLearner gold(options);
  for (std::uint64_t tau = 1; tau <= max_steps; ++tau) {
    gold.observe(data[tau - 1]);
    const std::span<const Observation> seen(data.data(), tau);
    const std::uint64_t alt_index = alternative(seen);
    const dsl::Program alt_guess = dsl::enumerate(alt_index);
    const bool alt_right = extension_equal_on_prefix(alt_guess, target, check_limit);
    const bool gold_right = extension_equal_on_prefix(gold.guess(), target, check_limit);
    if (!alt_right || gold_right) continue;

    SpeedupWitness w;
    w.tau = tau;
    w.gold_index = gold.state().index;
    w.alternative_index = alt_index;
    w.alternative_correct_on_target = alt_right;
    w.gold_wrong_on_target = !gold_right;

    // Swap the target to Gold's current guess.
    const dsl::Program swapped = gold.guess();
    const std::vector<Observation> swapped_data = complete_prefix(swapped, tau);
    w.same_data_on_swapped_target =
        std::equal(swapped_data.begin(), swapped_data.end(), seen.begin(), seen.end());

    GoldLearner replay(options);
    for (const Observation& o : swapped_data) replay.observe(o);
    w.gold_correct_on_swapped = extension_equal_on_prefix(replay.guess(), swapped, check_limit);
    const dsl::Program alt_swapped = dsl::enumerate(alternative(swapped_data));
    w.alternative_wrong_on_swapped = !extension_equal_on_prefix(alt_swapped, swapped, check_limit);
    return w;
  }
  return std::nullopt;
}

}  // namespace conceptlab::learners
