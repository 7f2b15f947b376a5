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

#include <map>

#include "doctest.h"
#include "experiments/runner.hpp"
#include "json.hpp"
#include "util/error.hpp"

using namespace conceptlab;
using namespace conceptlab::experiments;
using nlohmann::json;

namespace {

// Small but complete configs, one per subcommand.
const std::map<std::string, std::string>& small_configs() {
  static const std::map<std::string, std::string> m = {
      {"enumerate", R"j({"start": 100, "count": 50})j"},
      {"gold-learn", R"j({"target": "(pred (eq (mod x 2) 0))", "steps": 3000, "window": 100})j"},
      {"one-sided", R"j({"k": [2, 3], "steps": 300, "control_steps": 20000})j"},
      {"parity-train", R"j({"seeds": 1, "width": 16, "epochs": 5, "train_max": 31, "test_lo": 64, "test_hi": 95, "labels": "true"})j"},
      {"falsify-ffn", R"j({"random": 5, "seed": 3})j"},
      {"rnn-parity", R"j({"max_n": 1000})j"},
      {"render", R"j({"scene": {"objects": [{"points": [[5, -1], [5, 1]], "albedo": [[0.5]]}]}, "noise_sigma": 0.01, "seed": 4})j"},
      {"mix", R"j({"scene": {"sources": [{"fundamental_hz": 5, "harmonics": [{"amplitude": 1, "phase": 0}]}], "noise_sigma": 0.1}, "seed": 2})j"},
      {"sense", R"j({"policy": ["planner", "passive"], "trials": 3})j"},
      {"game", R"j({"authority": ["active", "passive"], "prover": "replay", "rounds": 20, "trials": 2})j"},
  };
  return m;
}

std::map<std::string, std::string> artifacts(const RunResult& r) {
  std::map<std::string, std::string> out;
  for (const auto& a : r.artifacts) out[a.name] = a.bytes;
  return out;
}

const std::string* find(const RunResult& r, const std::string& name) {
  for (const auto& a : r.artifacts) {
    if (a.name == name) return &a.bytes;
  }
  return nullptr;
}

ErrorCode error_of(const std::string& sub, const std::string& cfg) {
  try {
    run(sub, cfg);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error for " << sub << " " << cfg);
  return ErrorCode::io;
}

}  // namespace

TEST_CASE("every subcommand has a smoke config") {
  for (std::string_view s : subcommands()) {
    if (s == "stats") continue;
    CHECK_MESSAGE(small_configs().count(std::string(s)) == 1, s);
  }
}

TEST_CASE("runs are byte-identical and replay from config.json") {
  for (const auto& [sub, cfg] : small_configs()) {
    CAPTURE(sub);
    const RunResult a = run(sub, cfg);
    const RunResult b = run(sub, cfg);
    CHECK(artifacts(a) == artifacts(b));
    CHECK(a.summary == b.summary);
    CHECK(a.summary.find('\n') == std::string::npos);
    CHECK_FALSE(a.summary.empty());
    CHECK(json::parse(a.summary_json)["subcommand"] == sub);

    const std::string* resolved = find(a, "config.json");
    REQUIRE(resolved != nullptr);
    REQUIRE(find(a, "summary.json") != nullptr);
    const RunResult replay = run(sub, *resolved);
    CHECK(artifacts(replay) == artifacts(a));
  }
}

TEST_CASE("seeds change stochastic artifacts") {
  const RunResult a = run("game", R"j({"rounds": 10, "seed": 1})j");
  const RunResult b = run("game", R"j({"rounds": 10, "seed": 2})j");
  CHECK(*find(a, "trials.csv") != *find(b, "trials.csv"));
}

TEST_CASE("schema violations are config errors") {
  CHECK(error_of("enumerate", R"j({"bogus": 1})j") == ErrorCode::config);
  CHECK(error_of("game", R"j({"rounds": "many"})j") == ErrorCode::config);
  CHECK(error_of("game", R"j({"modality": "smell"})j") == ErrorCode::config);
  CHECK(error_of("game", R"j({"modality": "acoustic", "prover": "replay"})j") == ErrorCode::config);
  CHECK(error_of("sense", R"j({"policy": "psychic"})j") == ErrorCode::config);
  CHECK(error_of("nope", "{}") == ErrorCode::config);
  CHECK(error_of("enumerate", "[1, 2") == ErrorCode::config);
  CHECK(error_of("render", "{}") == ErrorCode::config);
}

TEST_CASE("module errors propagate with their own codes") {
  CHECK(error_of("gold-learn", R"j({"target": "(pred (eq x 3))"})j") == ErrorCode::unknown_symbol);
  CHECK(error_of("mix", R"j({"scene": {"sources": [{"fundamental_hz": 600, "harmonics": [{"amplitude": 1, "phase": 0}]}]}})j") ==
        ErrorCode::bandwidth);
}

TEST_CASE("gold-learn run.json records the convergence step") {
  const RunResult r = run("gold-learn", R"j({"target": "(pred (eq (mod x 2) 0))", "steps": 100000})j");
  const json j = json::parse(*find(r, "run.json"));
  REQUIRE(j["runs"].size() == 1);
  CHECK(j["runs"][0]["final_index"] == 179);
  CHECK(j["runs"][0]["convergence_step"] == json::parse(r.summary_json)["convergence_step"]);
  CHECK(j["runs"][0]["checks"].get<std::uint64_t>() > 0);
}

TEST_CASE("stats reproduces the game summary") {
  const RunResult g = run("game", R"j({"rounds": 30, "trials": 4})j");
  const std::string* jsonl = find(g, "transcripts_active_replay.jsonl");
  REQUIRE(jsonl != nullptr);
  const RunResult s = run("stats", json{{"transcripts", *jsonl}}.dump());
  const json gs = json::parse(g.summary_json)["arms"]["active_replay"];
  const json ss = json::parse(s.summary_json);
  CHECK(ss.dump().find("\"rate\":" + gs["rate"].dump()) != std::string::npos);
}
