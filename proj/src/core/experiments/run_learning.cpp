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

#include <algorithm>

#include "concept/concept.hpp"
#include "dsl/enumerate.hpp"
#include "dsl/eval.hpp"
#include "experiments/commands.hpp"
#include "learners/gold.hpp"
#include "util/rng.hpp"

namespace conceptlab::experiments {

namespace {

json convergence_json(const dsl::Program& target, const learners::ConvergenceRun& r, StreamMode mode) {
  return {{"target", target.to_string()},
          {"target_index", r.target_index},
          {"mode", stream_mode_name(mode)},
          {"converged", r.converged},
          {"convergence_step", r.convergence_step},
          {"final_index", r.final_index},
          {"final_program", dsl::enumerate(r.final_index).to_string()},
          {"prefix_correct", r.prefix_correct},
          {"steps", r.steps},
          {"checks", r.checks},
          {"change_steps", r.change_steps},
          {"change_indices", r.change_indices}};
}

dsl::Program target_param(Config& cfg) {
  if (!cfg.has("target")) {
    cfg.note("target", "(pred (eq (mod x 2) 0))");
    return dsl::parse("(pred (eq (mod x 2) 0))");
  }
  const json& t = cfg.raw("target");
  if (t.is_number_unsigned()) return dsl::enumerate(t.get<std::uint64_t>());
  if (t.is_string()) {
    const auto s = t.get<std::string>();
    if (!s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      return dsl::enumerate(std::stoull(s));
    }
    return dsl::parse(s);
  }
  throw Error(ErrorCode::config, "gold-learn: target must be DSL text or an enumeration index");
}

}  // namespace

RunResult run_enumerate(std::string_view text) {
  Config cfg("enumerate", text, {"start", "count", "program", "max_size", "seed"});
  const auto start = cfg.get<std::uint64_t>("start", 0);
  const auto count = cfg.get<std::uint64_t>("count", 10);
  const auto max_size = cfg.get<std::uint64_t>("max_size", 9);
  cfg.get<std::uint64_t>("seed", 0);
  check(count <= 10'000'000, "enumerate: count too large");
  check(max_size <= 64, "enumerate: max_size too large");

  RunResult result;
  std::string programs = "index,size,program\n";
  for (std::uint64_t i = start; i < start + count; ++i) {
    const dsl::Program p = dsl::enumerate(i);
    programs += std::to_string(i) + "," + std::to_string(p.size()) + ",\"" + p.to_string() + "\"\n";
  }
  result.artifacts.push_back({"programs.csv", programs});

  std::string counts = "size,programs,cumulative\n";
  for (std::uint64_t s = 1; s <= max_size; ++s) {
    counts += std::to_string(s) + "," + std::to_string(dsl::count_predicates(s)) + "," +
              std::to_string(dsl::programs_below_size(s + 1)) + "\n";
  }
  result.artifacts.push_back({"counts.csv", counts});

  json summary = {{"start", start}, {"count", count}};
  if (cfg.has("program")) {
    const dsl::Program p = dsl::parse(cfg.get<std::string>("program", ""));
    summary["program"] = p.to_string();
    summary["index"] = dsl::index_of(p);
    result.summary = "enumerate: " + p.to_string() + " has index " + std::to_string(dsl::index_of(p));
  } else {
    result.summary = "enumerate: " + std::to_string(count) + " programs from index " + std::to_string(start) +
                     ", first " + dsl::enumerate(start).to_string();
  }
  return finish(cfg, std::move(result), summary);
}

RunResult run_gold_learn(std::string_view text) {
  Config cfg("gold-learn", text,
             {"target", "mode", "steps", "window", "check_limit", "enumeration_cap", "random_targets", "max_index",
              "seed"});
  const StreamMode mode = parse_stream_mode(cfg.get<std::string>("mode", "complete"));
  const auto steps = cfg.get<std::uint64_t>("steps", 100'000);
  const auto window = cfg.get<std::uint64_t>("window", 1000);
  const auto check_limit = cfg.get<std::uint64_t>("check_limit", 10'000);
  learners::GoldOptions opts;
  opts.enumeration_cap = cfg.get<std::uint64_t>("enumeration_cap", 1'000'000);
  const auto random_targets = cfg.get<std::uint64_t>("random_targets", 0);
  const auto max_index = cfg.get<std::uint64_t>("max_index", 2000);
  const auto seed = cfg.get<std::uint64_t>("seed", 0);
  check(window >= 1, "gold-learn: window must be >= 1");

  std::vector<dsl::Program> targets;
  if (random_targets > 0) {
    check(!cfg.has("target"), "gold-learn: give either target or random_targets");
    Rng rng = Rng(seed).split("gold-learn/targets");
    for (std::uint64_t i = 0; i < random_targets; ++i) targets.push_back(dsl::enumerate(rng.below(max_index + 1)));
  } else {
    targets.push_back(target_param(cfg));
  }

  json runs = json::array();
  std::string csv = "target_index,target,converged,convergence_step,final_index,prefix_correct,checks\n";
  std::size_t successes = 0;
  for (const dsl::Program& target : targets) {
    const auto r = learners::learn_until_converged(target, mode, steps, window, check_limit, opts);
    successes += r.converged && r.prefix_correct;
    runs.push_back(convergence_json(target, r, mode));
    csv += std::to_string(r.target_index) + ",\"" + target.to_string() + "\"," + (r.converged ? "1" : "0") + "," +
           std::to_string(r.convergence_step) + "," + std::to_string(r.final_index) + "," +
           (r.prefix_correct ? "1" : "0") + "," + std::to_string(r.checks) + "\n";
  }

  RunResult result;
  result.artifacts.push_back({"run.json", json{{"window", window}, {"check_limit", check_limit}, {"runs", runs}}.dump(2) + "\n"});
  result.artifacts.push_back({"runs.csv", csv});
  json summary = {{"targets", targets.size()}, {"identified", successes}, {"window", window}};
  if (targets.size() == 1) {
    summary["convergence_step"] = runs[0]["convergence_step"];
    summary["final_program"] = runs[0]["final_program"];
    result.summary = "gold-learn: " + targets[0].to_string() + (successes ? " identified" : " not identified") +
                     ", convergence step " + runs[0]["convergence_step"].dump() + ", final guess " +
                     runs[0]["final_program"].get<std::string>();
  } else {
    result.summary = "gold-learn: " + std::to_string(successes) + "/" + std::to_string(targets.size()) +
                     " targets identified (window " + std::to_string(window) + ")";
  }
  return finish(cfg, std::move(result), summary);
}

RunResult run_one_sided(std::string_view text) {
  Config cfg("one-sided", text,
             {"k", "steps", "check_limit", "control", "control_steps", "window", "enumeration_cap", "seed"});
  const auto ks = list_param<std::uint64_t>(cfg, "k", {2, 3, 5});
  const auto steps = cfg.get<std::uint64_t>("steps", 10'000);
  const auto check_limit = cfg.get<std::uint64_t>("check_limit", 1000);
  const bool control = cfg.get<bool>("control", true);
  const auto control_steps = cfg.get<std::uint64_t>("control_steps", 100'000);
  const auto window = cfg.get<std::uint64_t>("window", 1000);
  learners::GoldOptions opts;
  opts.enumeration_cap = cfg.get<std::uint64_t>("enumeration_cap", 1'000'000);
  cfg.get<std::uint64_t>("seed", 0);
  for (auto k : ks) check(k >= 1, "one-sided: k must be >= 1");

  json per_k = json::array();
  std::string trajectory = "k,step,index\n";
  bool failure_shown = true;
  bool control_ok = true;
  for (std::uint64_t k : ks) {
    const auto run = learners::one_sided_run(k, steps, check_limit, opts);
    std::vector<std::uint64_t> distinct;
    for (std::size_t t = 0; t < run.trajectory.size(); ++t) {
      if (t == 0 || run.trajectory[t] != run.trajectory[t - 1]) {
        trajectory += std::to_string(k) + "," + std::to_string(t + 1) + "," + std::to_string(run.trajectory[t]) + "\n";
        distinct.push_back(run.trajectory[t]);
      }
    }
    const std::uint64_t final_index = run.trajectory.empty() ? 0 : run.trajectory.back();
    json entry = {{"k", k},
                  {"steps", steps},
                  {"ever_exact", run.ever_exact},
                  {"always_consistent", run.always_consistent},
                  {"guess_changes", distinct.size()},
                  {"final_index", final_index},
                  {"final_program", dsl::enumerate(final_index).to_string()}};
    failure_shown = failure_shown && !run.ever_exact;
    if (control) {
      const auto c = learners::learn_until_converged(dsl::multiples_of(k), StreamMode::complete_supervised,
                                                     control_steps, window, check_limit, opts);
      entry["control"] = convergence_json(dsl::multiples_of(k), c, StreamMode::complete_supervised);
      control_ok = control_ok && c.converged && c.prefix_correct;
    }
    per_k.push_back(std::move(entry));
  }

  RunResult result;
  result.artifacts.push_back({"run.json", json{{"check_limit", check_limit}, {"runs", per_k}}.dump(2) + "\n"});
  result.artifacts.push_back({"trajectory.csv", trajectory});
  json summary = {{"one_sided_never_exact", failure_shown}, {"two_sided_identified", control ? json(control_ok) : json(nullptr)}};
  result.summary = std::string("one-sided: ") + (failure_shown ? "no" : "some") + " one-sided run reached the target" +
                   (control ? std::string(", two-sided control ") + (control_ok ? "identified all" : "failed") : "");
  return finish(cfg, std::move(result), summary);
}

}  // namespace conceptlab::experiments
