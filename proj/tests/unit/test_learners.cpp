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

#include "doctest.h"
#include "dsl/enumerate.hpp"
#include "learners/gold.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"

using namespace conceptlab;
using namespace conceptlab::learners;
using dsl::parse;

namespace {

const dsl::Program kEven = parse("(pred (eq (mod x 2) 0))");

std::vector<Observation> complete(const dsl::Program& p, Natural length) {
  std::vector<Observation> out;
  for (Natural x = 0; x < length; ++x) out.push_back({x, dsl::eval(p, x)});
  return out;
}

bool compatible(const dsl::Program& p, const std::vector<Observation>& history) {
  for (const auto& o : history) {
    if (dsl::eval(p, o.x) != o.y.value_or(true)) return false;
  }
  return true;
}

// Oracle: first index compatible with the whole history, by exhaustive scan.
std::uint64_t first_compatible(const std::vector<Observation>& history, std::uint64_t cap) {
  for (std::uint64_t i = 0; i <= cap; ++i) {
    if (compatible(dsl::enumerate(i), history)) return i;
  }
  return UINT64_MAX;
}

}  // namespace

TEST_CASE("a contradicting observation advances past all-accepting programs") {
  LearnerState s;
  s = gold_step(s, {0, true});
  CHECK(s.index == 0);
  s = gold_step(s, {1, false});
  CHECK(s.index == first_compatible(s.history, 100000));
  const dsl::Program g = dsl::enumerate(s.index);
  CHECK_FALSE(dsl::eval(g, 1));
  CHECK(dsl::eval(g, 0));
  for (std::uint64_t j = 0; j < s.index; ++j) CHECK_FALSE(compatible(dsl::enumerate(j), s.history));
}

TEST_CASE("a consistent observation only extends the history") {
  LearnerState s;
  s.index = dsl::index_of(kEven);
  s.history = {{0, true}};
  const LearnerState t = gold_step(s, {4, true});
  CHECK(t.index == s.index);
  CHECK(t.history.size() == 2);
  CHECK(t.history.back() == Observation{4, true});
}

TEST_CASE("minimality holds after every step (exhaustive rescan)") {
  Rng rng(2024);
  for (int trial = 0; trial < 6; ++trial) {
    const dsl::Program target = dsl::enumerate(rng.below(3000));
    GoldLearner learner;
    const auto data = complete(target, 200);
    for (const auto& o : data) {
      learner.observe(o);
      if (learner.state().index > 10000) break;
      const std::uint64_t oracle = first_compatible(learner.state().history, learner.state().index);
      if (oracle != learner.state().index) {
        FAIL("minimality broken for target " << target.to_string() << " at step "
                                               << learner.state().history.size());
      }
    }
  }
}

TEST_CASE("even numbers are identified from the complete stream") {
  const ConvergenceRun run =
      learn_until_converged(kEven, StreamMode::complete_supervised, 20000, 1000, 10000);
  CHECK(run.converged);
  CHECK(run.prefix_correct);
  CHECK(run.steps == run.convergence_step + 1000);
  CHECK(extension_equal_on_prefix(dsl::enumerate(run.final_index), kEven, 10000));
  MESSAGE("even: final index " << run.final_index << ", t* = " << run.convergence_step);

  // Past t* the prefix is sufficiently exciting; two observations are not.
  const auto data = complete(kEven, run.convergence_step + 1);
  CHECK(is_sufficiently_exciting(data, Concept(kEven), 10000));
  const auto two = complete(kEven, 2);
  CHECK_FALSE(is_sufficiently_exciting(two, Concept(kEven), 10000));
  CHECK(is_sufficiently_exciting({}, Concept(dsl::all_naturals()), 10000));
}

TEST_CASE("has_converged is definitional") {
  LearnerState s;
  s.history.assign(100, Observation{0, true});
  s.last_change = 0;
  CHECK(has_converged(s, 100));
  CHECK_FALSE(has_converged(s, 101));
  s.last_change = 100;
  CHECK_FALSE(has_converged(s, 1));
  CHECK_THROWS_AS(has_converged(s, 0), Error);
}

TEST_CASE("identification in the limit for 50 random targets") {
  Rng rng = Rng(7).split("targets");
  int converged = 0;
  for (int i = 0; i < 50; ++i) {
    const dsl::Program target = dsl::enumerate(rng.below(2001));
    const ConvergenceRun run =
        learn_until_converged(target, StreamMode::complete_supervised, 20000, 1000, 10000);
    if (run.converged && run.prefix_correct) {
      ++converged;
    } else {
      MESSAGE("not identified: " << target.to_string());
    }
    CHECK(run.final_index <= run.target_index);
  }
  CHECK(converged == 50);
}

TEST_CASE("one-sided positives never identify multiples of k") {
  const OneSidedRun two = one_sided_run(2, 10000);
  CHECK_FALSE(two.ever_exact);
  CHECK(two.always_consistent);
  // Every guess is over-general: it accepts all of 0..1000.
  std::uint64_t last = UINT64_MAX;
  for (std::uint64_t idx : two.trajectory) {
    if (idx == last) continue;
    last = idx;
    const dsl::Program g = dsl::enumerate(idx);
    for (Natural n = 0; n <= 1000; ++n) {
      if (!dsl::eval(g, n)) FAIL("guess " << g.to_string() << " rejects " << n);
    }
  }

  const OneSidedRun one = one_sided_run(1, 10);
  for (std::uint64_t idx : one.trajectory) CHECK(idx == 0);
}

TEST_CASE("two-sided control for k = 5 converges while one-sided does not") {
  const ConvergenceRun run = learn_until_converged(dsl::multiples_of(5), StreamMode::complete_supervised,
                                                   20000, 1000, 10000);
  CHECK(run.converged);
  CHECK(run.prefix_correct);
  CHECK_FALSE(one_sided_run(5, 2000).ever_exact);
}

TEST_CASE("enumeration cap is reported") {
  GoldOptions tight;
  tight.enumeration_cap = 10;
  GoldLearner learner(tight);
  learner.observe({0, true});
  CHECK_THROWS_AS(
      [&] {
        for (const auto& o : complete(kEven, 10)) learner.observe(o);
      }(),
      Error);
  try {
    gold_step(LearnerState{}, {0, false}, GoldOptions{0});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::enumeration_cap);
  }
}

TEST_CASE("no-uniform-speedup witness") {
  // An alternative learner that jumps straight to the target once it has seen
  // one observation. Gold is slower on the target, but the swapped target
  // (Gold's current guess) produces the same data and reverses the outcome.
  const std::uint64_t even_index = dsl::index_of(kEven);
  AlternativeLearner jumper = [&](std::span<const Observation>) { return even_index; };
  const auto w = no_speedup_witness(jumper, kEven, 50, 10000);
  REQUIRE(w.has_value());
  CHECK(w->holds());
  CHECK(w->gold_index != w->alternative_index);
  // Re-verify the swapped-target data equality independently.
  const dsl::Program swapped = dsl::enumerate(w->gold_index);
  for (Natural x = 0; x < w->tau; ++x) CHECK(dsl::eval(swapped, x) == dsl::eval(kEven, x));
  CHECK_FALSE(extension_equal_on_prefix(swapped, kEven, 10000));
}
