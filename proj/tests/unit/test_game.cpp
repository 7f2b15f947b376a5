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
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "game/game.hpp"
#include "json.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"

using namespace conceptlab;
using namespace conceptlab::game;

namespace {

Vec2 center_of(const Scene2D& s) {
  double x = 0, y = 0;
  for (const auto& seg : s.segments()) {
    x += seg.a.x + seg.b.x;
    y += seg.a.y + seg.b.y;
  }
  const double n = 2.0 * double(s.segments().size());
  return {x / n, y / n};
}

VerifierConfig visual(Authority a, const Scene2D& scene, std::size_t rounds, double sigma = 0.01) {
  VerifierConfig v;
  v.modality = Modality::visual;
  v.authority = a;
  v.policy = a == Authority::active ? ChallengePolicy::random_novel : ChallengePolicy::fixed;
  v.max_rounds = rounds;
  v.noise_sigma = sigma;
  const Vec2 c = center_of(scene);
  Pose fixed;
  fixed.position = {c.x - 4, c.y};
  v.poses = {fixed};
  v.novel_pose.center = c;
  return v;
}

AudioScene audio_scene(std::uint64_t seed) {
  Rng rng(seed);
  AudioScene s;
  s.window = 256;
  for (int k = 0; k < 2; ++k) {
    FourierSeries f{rng.uniform(30, 80), rng.uniform(0, 0.01), {}};
    for (int h = 0; h < 3; ++h) f.harmonics.push_back({rng.uniform(), rng.uniform(0, 6)});
    s.sources.push_back(f);
  }
  return s;
}

VerifierConfig acoustic(Authority a, std::size_t rounds) {
  VerifierConfig v;
  v.modality = Modality::acoustic;
  v.authority = a;
  v.policy = a == Authority::active ? ChallengePolicy::random_novel : ChallengePolicy::fixed;
  v.max_rounds = rounds;
  v.noise_sigma = 0.01;
  return v;
}

void check_transcript_shape(const GameTranscript& t) {
  bool falsified = false;
  for (std::size_t i = 0; i < t.rounds.size(); ++i) {
    CHECK(t.rounds[i].index == i + 1);
    CHECK_FALSE(falsified);  // nothing after falsification
    if (t.rounds[i].falsified) {
      falsified = true;
      CHECK(t.detection_round == i + 1);
      CHECK(i + 1 == t.rounds.size());
    }
  }
  if (!falsified) CHECK_FALSE(t.detection_round.has_value());
}

}  // namespace

TEST_CASE("active visual verifier catches the replay spoofer") {
  int detected = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Scene2D scene = random_scene(seed);
    const VerifierConfig v = visual(Authority::active, scene, 200);
    const GameTranscript t = run_game(v, ReplayLagSpoofer{scene, v.poses}, scene, seed);
    check_transcript_shape(t);
    detected += t.detection_round.has_value();
    if (t.detection_round) CHECK(*t.detection_round >= 1);
  }
  CHECK(detected == 50);
}

TEST_CASE("passive verifier never catches a replay spoofer that saw its pose") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Scene2D scene = random_scene(seed);
    const VerifierConfig v = visual(Authority::passive, scene, 1000);
    const GameTranscript t = run_game(v, ReplayLagSpoofer{scene, v.poses}, scene, seed);
    check_transcript_shape(t);
    CHECK_FALSE(t.detection_round.has_value());
    CHECK(t.rounds.size() == 1000);
  }
}

TEST_CASE("replay spoofer cannot answer a new challenge in its first round") {
  // A scene visible only from behind: anything the spoofer copies from an
  // earlier view is wrong for a view that reveals new content.
  const Scene2D scene = random_scene(9);
  const VerifierConfig v = visual(Authority::active, scene, 50, 0.0);
  const GameTranscript t = run_game(v, ReplayLagSpoofer{scene, {}}, scene, 9);
  REQUIRE(t.detection_round.has_value());
  CHECK(*t.detection_round == 1);
  CHECK(t.rounds[0].mismatch > t.threshold);
}

TEST_CASE("passive verifiers issue round-indexed predictable challenges") {
  const Scene2D scene = random_scene(4);
  VerifierConfig v = visual(Authority::passive, scene, 20);
  const auto a = run_game(v, PhysicalProver{scene}, scene, 1);
  const auto b = run_game(v, PhysicalProver{scene}, scene, 2);
  REQUIRE(a.rounds.size() == b.rounds.size());
  for (std::size_t i = 0; i < a.rounds.size(); ++i) CHECK(a.rounds[i].challenge.to_json() == b.rounds[i].challenge.to_json());
  v.policy = ChallengePolicy::random_novel;
  CHECK_THROWS_AS(v.validate(), Error);
}

TEST_CASE("active acoustic verifier learns nothing from the additive spoofer") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const AudioScene scene = audio_scene(seed);
    const VerifierConfig v = acoustic(Authority::active, 1000);
    const GameTranscript t = run_game(v, AcousticAdditiveSpoofer{scene}, scene, seed);
    check_transcript_shape(t);
    CHECK_FALSE(t.detection_round.has_value());
    const GameTranscript passive = acoustic_passive_replay(t, v, scene);
    CHECK(same_observations(t, passive));
    CHECK(passive.authority == Authority::passive);
  }
}

TEST_CASE("acoustic transcripts are reproducible as passive ones for every seed") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const AudioScene scene = audio_scene(seed + 100);
    const VerifierConfig v = acoustic(Authority::active, 10);
    const GameTranscript t = run_game(v, PhysicalProver{scene}, scene, seed);
    CHECK(same_observations(t, acoustic_passive_replay(t, v, scene)));
  }
}

TEST_CASE("perfect model spoofer is never detected") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Scene2D scene = random_scene(seed);
    for (Authority a : {Authority::active, Authority::passive}) {
      const auto t = run_game(visual(a, scene, 100), PerfectModelSpoofer{scene}, scene, seed);
      CHECK_FALSE(t.detection_round.has_value());
    }
    const AudioScene audio = audio_scene(seed);
    CHECK_FALSE(run_game(acoustic(Authority::active, 100), PerfectModelSpoofer{audio}, audio, seed)
                    .detection_round.has_value());
  }
}

TEST_CASE("physical vs physical: zero mismatch at sigma 0") {
  const Scene2D scene = random_scene(1);
  const auto t = verify_physical_vs_physical(visual(Authority::active, scene, 100, 0.0), scene, scene, 5);
  CHECK(t.rounds.size() == 100);
  for (const auto& r : t.rounds) CHECK(r.mismatch == 0.0);
  CHECK_FALSE(t.detection_round.has_value());
}

TEST_CASE("physical vs physical: false alarms stay below 1%") {
  std::size_t alarms = 0, rounds = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Scene2D scene = random_scene(seed);
    VerifierConfig v = visual(Authority::active, scene, 100, 0.02);
    v.frames = 4;
    const auto t = verify_physical_vs_physical(v, scene, scene, seed);
    alarms += t.detection_round.has_value();
    rounds += t.rounds.size();
    CHECK(t.threshold == doctest::Approx(6 * 0.02 / 2));
  }
  CHECK(double(alarms) / 100.0 < 0.01);
  MESSAGE("false alarms " << alarms << " over " << rounds << " rounds");
}

TEST_CASE("physical vs physical: scenes differing behind an occluder") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto fam = sensing::occluder_family(seed);
    VerifierConfig active = visual(Authority::active, fam.hypotheses[0], 200);
    active.novel_pose.center = fam.center;
    const auto caught = verify_physical_vs_physical(active, fam.hypotheses[0], fam.hypotheses[1], seed);
    CHECK(caught.detection_round.has_value());

    VerifierConfig passive = visual(Authority::passive, fam.hypotheses[0], 200);
    passive.poses = {fam.candidates[0]};
    const auto missed = verify_physical_vs_physical(passive, fam.hypotheses[0], fam.hypotheses[1], seed);
    CHECK_FALSE(missed.detection_round.has_value());
  }
}

TEST_CASE("configuration mismatches are rejected") {
  const Scene2D scene = random_scene(1);
  const AudioScene audio = audio_scene(1);
  try {
    run_game(acoustic(Authority::active, 5), PhysicalProver{scene}, audio, 0);
    FAIL("expected config error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::config);
  }
  CHECK_THROWS_AS(run_game(visual(Authority::active, scene, 5), PhysicalProver{scene}, audio, 0), Error);
  CHECK_THROWS_AS(run_game(visual(Authority::active, scene, 5), AcousticAdditiveSpoofer{audio}, scene, 0), Error);
}

TEST_CASE("games are deterministic given the seed") {
  const Scene2D scene = random_scene(2);
  const auto v = visual(Authority::active, scene, 30);
  CHECK(run_game(v, ReplayLagSpoofer{scene, v.poses}, scene, 8).to_jsonl() ==
        run_game(v, ReplayLagSpoofer{scene, v.poses}, scene, 8).to_jsonl());
  CHECK(run_game(v, PhysicalProver{scene}, scene, 8).to_jsonl() !=
        run_game(v, PhysicalProver{scene}, scene, 9).to_jsonl());
}

TEST_CASE("detection statistics") {
  auto make = [](std::optional<std::size_t> tau, std::size_t rounds) {
    GameTranscript t;
    t.detection_round = tau;
    for (std::size_t i = 1; i <= rounds; ++i) {
      GameRound r;
      r.index = i;
      r.mismatch = double(i);
      r.falsified = tau && *tau == i;
      t.rounds.push_back(r);
    }
    return t;
  };
  const auto single = detection_statistics({make(3, 3)});
  CHECK(single.rate == 1.0);
  CHECK(single.tau_median == 3.0);

  const auto none = detection_statistics({make(std::nullopt, 5), make(std::nullopt, 5)});
  CHECK(none.rate == 0.0);
  CHECK_FALSE(none.tau_median.has_value());
  CHECK_FALSE(none.tau_q10.has_value());
  CHECK(nlohmann::json::parse(none.to_json())["tau_median"].is_null());

  std::vector<GameTranscript> many;
  for (std::size_t k = 1; k <= 50; ++k) many.push_back(make(k, k));
  const auto s = detection_statistics(many);
  CHECK(s.rate == 1.0);
  CHECK(*s.tau_median == doctest::Approx(25.5));
  // Type-7 quantiles of 1..50.
  CHECK(*s.tau_q10 == doctest::Approx(1 + 0.1 * 49));
  CHECK(*s.tau_q90 == doctest::Approx(1 + 0.9 * 49));
  REQUIRE(s.per_round.size() == 50);
  CHECK(s.per_round[0].count == 50);
  CHECK(s.per_round[49].count == 1);
  CHECK(s.per_round_csv().find('\n') != std::string::npos);
  CHECK(trials_csv(many).find('\n') != std::string::npos);
}

TEST_CASE("transcript jsonl is one header plus one line per round") {
  const Scene2D scene = random_scene(3);
  const auto t = run_game(visual(Authority::passive, scene, 7), PhysicalProver{scene}, scene, 1);
  std::stringstream ss(t.to_jsonl());
  std::vector<nlohmann::json> lines;
  for (std::string l; std::getline(ss, l);) lines.push_back(nlohmann::json::parse(l));
  REQUIRE(lines.size() == 8);
  CHECK(lines[0]["type"] == "header");
  CHECK(lines[1]["response_hash"] == vector_hash(t.rounds[0].response));
}
