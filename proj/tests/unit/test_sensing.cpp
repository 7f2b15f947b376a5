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
#include <numbers>

#include "doctest.h"
#include "sensing/sensing.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"

using namespace conceptlab;
using namespace conceptlab::sensing;
using physical::SceneObject;

namespace {

SceneObject wall(Vec2 a, Vec2 b, double albedo) {
  SceneObject o;
  o.points = {a, b};
  o.albedo = {{albedo}};
  return o;
}

Pose looking(Vec2 at, double heading) {
  Pose p;
  p.position = at;
  p.heading = heading;
  p.pixels = 16;
  return p;
}

}  // namespace

TEST_CASE("averaging: single frame and noiseless frames") {
  const std::vector<std::vector<double>> one{{0.1, 0.2, 0.3}};
  const AveragedFrames a = average_frames(one, true);
  CHECK(a.mean == one[0]);
  CHECK(std::all_of(a.variance_of_mean.begin(), a.variance_of_mean.end(), [](double v) { return std::isnan(v); }));

  const std::vector<std::vector<double>> same(50, std::vector<double>{0.25, 0.5, 0.125});
  const AveragedFrames b = average_frames(same, true);
  CHECK(b.mean == same[0]);
  CHECK_THROWS_AS(average_frames(same, false), Error);
  CHECK_THROWS_AS(average_frames(std::vector<std::vector<double>>{}, true), Error);
}

TEST_CASE("averaging: noiseless render is recovered bit-exactly") {
  const Scene2D scene({wall({5, -1}, {5, 1}, 0.3)});
  const Pose pose = looking({0, 0}, 0);
  const auto truth = physical::predict(scene, pose, {});
  std::vector<std::vector<double>> frames;
  for (int t = 0; t < 7; ++t) frames.push_back(physical::render(scene, pose, {}).values);
  CHECK(average_frames(frames, true).mean == truth);
}

TEST_CASE("averaging: variance of the mean scales as sigma^2 / T") {
  const std::size_t pixels = 1000;
  for (std::size_t T : {10u, 100u, 1000u}) {
    int pass_emp = 0, pass_est = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      Rng rng = Rng(seed).split("frames");
      std::vector<std::vector<double>> frames(T, std::vector<double>(pixels));
      for (auto& f : frames) {
        for (double& v : f) v = rng.normal();
      }
      const AveragedFrames a = average_frames(frames, true);
      double emp = 0, est = 0;
      for (std::size_t i = 0; i < pixels; ++i) {
        emp += a.mean[i] * a.mean[i];
        est += a.variance_of_mean[i];
      }
      emp /= pixels;
      est /= pixels;
      const double expected = 1.0 / double(T);
      pass_emp += std::abs(emp - expected) <= 0.2 * expected;
      pass_est += std::abs(est - expected) <= 0.2 * expected;
    }
    CHECK(pass_emp == 30);
    CHECK(pass_est == 30);
  }
}

TEST_CASE("stochastic resonance boundaries and accuracy") {
  CHECK(stochastic_resonance(0.0, 1000, 1) == 0.0);
  CHECK(stochastic_resonance(1.0, 1000, 1) == 1.0);
  const double tol = 5 * std::sqrt(0.25 * 0.75 / 1e4);
  int pass = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) pass += std::abs(stochastic_resonance(0.25, 10000, seed) - 0.25) < tol;
  CHECK(pass >= 99);
  CHECK_THROWS_AS(stochastic_resonance(0.5, 0, 1), Error);
}

TEST_CASE("stochastic resonance is unbiased") {
  const std::size_t n = 1000;
  for (double v : {0.1, 0.25, 0.5, 0.9}) {
    double sum = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) sum += stochastic_resonance(v, n, seed);
    const double mean = sum / 1000;
    const double se = std::sqrt(v * (1 - v) / n / 1000);
    CHECK(std::abs(mean - v) <= 3 * se);
  }
}

TEST_CASE("orbit geometry") {
  const auto two = orbit_policy({1, 2}, 3, 2);
  REQUIRE(two.size() == 2);
  const double diff = std::remainder(two[1].heading - two[0].heading, 2 * std::numbers::pi);
  CHECK(std::abs(std::abs(diff) - std::numbers::pi) < 1e-12);
  for (const Pose& p : orbit_policy({1, 2}, 3, 12)) {
    CHECK(std::hypot(p.position.x - 1, p.position.y - 2) == doctest::Approx(3.0));
    // Heading points at the center.
    const double to_center = std::atan2(2 - p.position.y, 1 - p.position.x);
    CHECK(std::abs(std::remainder(p.heading - to_center, 2 * std::numbers::pi)) < 1e-9);
  }
  CHECK_THROWS_AS(orbit_policy({0, 0}, 1, 1), Error);

  const Scene2D empty;
  for (const Pose& p : orbit_policy({0, 0}, 2, 8)) {
    const auto img = physical::render(empty, p, {});
    CHECK(std::all_of(img.levels.begin(), img.levels.end(), [](int l) { return l == 0; }));
  }
}

TEST_CASE("a marker hidden from the front becomes visible from the orbit") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const OccluderFamily fam = occluder_family(seed);
    const Scene2D& scene = fam.hypotheses[0];
    const double mark = scene.segments()[1].markers.at(0).albedo;
    const auto front = physical::predict(scene, fam.candidates[0], {});
    CHECK(std::count(front.begin(), front.end(), mark) == 0);
    CHECK(front == physical::predict(fam.hypotheses[1], fam.candidates[0], {}));
    bool seen = false;
    for (std::size_t i = 1; i < fam.candidates.size(); ++i) {
      const auto v = physical::predict(scene, fam.candidates[i], {});
      seen |= std::count(v.begin(), v.end(), mark) > 0;
    }
    CHECK(seen);
  }
}

TEST_CASE("planner prefers the orbit pose over the front pose") {
  const OccluderFamily fam = occluder_family(3);
  HypothesisSet hyps(fam.hypotheses);
  std::size_t orbit = 0;
  for (std::size_t i = 1; i < fam.candidates.size() && !orbit; ++i) {
    if (physical::predict(fam.hypotheses[0], fam.candidates[i], {}) !=
        physical::predict(fam.hypotheses[1], fam.candidates[i], {})) {
      orbit = i;
    }
  }
  REQUIRE(orbit > 0);
  const std::vector<Pose> two{fam.candidates[0], fam.candidates[orbit]};
  const ViewPlan plan = plan_next_view(hyps, two, {}, 1e-9);
  CHECK(plan.pose_index == 1);
  CHECK(plan.worst_cluster == 1);
  CHECK_FALSE(plan.non_exciting);
  const std::vector<Pose> front_only{fam.candidates[0]};
  CHECK(plan_next_view(hyps, front_only, {}, 1e-9).non_exciting);
}

TEST_CASE("planner flags indistinguishable hypotheses") {
  const Scene2D s({wall({5, -1}, {5, 1}, 0.4)});
  HypothesisSet hyps({s, s, s});
  const std::vector<Pose> poses{looking({0, 0}, 0), looking({0, 0}, 1)};
  const ViewPlan plan = plan_next_view(hyps, poses, {}, 1e-9);
  CHECK(plan.non_exciting);
  CHECK(plan.pose_index == 0);
  CHECK(plan.worst_cluster == 3);
}

TEST_CASE("planner picks the 2/2 split over the 3/1 split") {
  const double a[] = {0.1, 0.1, 0.9, 0.9};  // seen looking +x
  const double b[] = {0.1, 0.1, 0.1, 0.9};  // seen looking -x
  std::vector<Scene2D> scenes;
  for (int i = 0; i < 4; ++i) scenes.push_back(Scene2D({wall({5, -3}, {5, 3}, a[i]), wall({-5, -3}, {-5, 3}, b[i])}));
  HypothesisSet hyps(scenes);
  const std::vector<Pose> poses{looking({0, 0}, std::numbers::pi), looking({0, 0}, 0)};
  const ViewPlan plan = plan_next_view(hyps, poses, {}, 1e-9);
  CHECK(plan.pose_index == 1);
  CHECK(plan.worst_cluster == 2);
  CHECK(cluster_sizes({{0.0}, {0.0}, {1.0}}, 0.5) == std::vector<std::size_t>{2, 1});
}

TEST_CASE("planner progress and no false elimination") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const OccluderFamily fam = occluder_family(seed);
    for (std::size_t truth = 0; truth < 2; ++truth) {
      IdentifyOptions opt;
      opt.policy = ViewPolicy::planner;
      opt.max_rounds = fam.candidates.size();
      opt.seed = seed;
      const IdentifyRun run = identify(fam.hypotheses, truth, fam.candidates, opt);
      CHECK(run.isolated);
      CHECK_FALSE(run.truth_eliminated);
      CHECK(run.rounds.size() <= fam.candidates.size());
      CHECK(run.final_live == std::vector<std::size_t>{truth});
    }
  }

  // Six two-wall scenes; every pair differs on at least one wall.
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Scene2D> scenes;
    for (int i = 0; i < 6; ++i) {
      scenes.push_back(Scene2D({wall({4, -2}, {4, 2}, double(i % 3) / 3 + 0.1),
                                wall({-4, -2}, {-4, 2}, double(i / 3) / 2 + 0.2)}));
    }
    const std::vector<Pose> poses{looking({0, 0}, 0), looking({0, 0}, std::numbers::pi), looking({0, 0}, 0.5 * std::numbers::pi)};
    const std::size_t truth = rng.below(6);
    IdentifyOptions opt;
    opt.max_rounds = poses.size();
    const IdentifyRun run = identify(scenes, truth, poses, opt);
    CHECK(run.isolated);
    CHECK_FALSE(run.truth_eliminated);
  }
}

TEST_CASE("noisy identification keeps the truth alive") {
  int eliminated = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const OccluderFamily fam = occluder_family(seed);
    IdentifyOptions opt;
    opt.max_rounds = fam.candidates.size();
    opt.render.noise_sigma = 0.01;
    opt.frames = 4;
    opt.seed = seed;
    eliminated += identify(fam.hypotheses, 0, fam.candidates, opt).truth_eliminated;
  }
  CHECK(eliminated == 0);
}

TEST_CASE("passive viewing cannot separate the occluded pair") {
  const OccluderFamily fam = occluder_family(1);
  IdentifyOptions opt;
  opt.policy = ViewPolicy::passive;
  opt.max_rounds = 10;
  const IdentifyRun run = identify(fam.hypotheses, 0, fam.candidates, opt);
  CHECK_FALSE(run.isolated);
  CHECK(run.final_live.size() == 2);
}

TEST_CASE("mismatch and control actions") {
  const std::vector<double> a{0.1, 0.5}, b{0.1, 0.75};
  CHECK(mismatch(a, b) == 0.25);
  CHECK(mismatch_threshold(0.01, 4) == doctest::Approx(0.03));
  CHECK(mismatch_threshold(0.0, 4) == 1e-9);

  CHECK_NOTHROW(ControlAction{SetThreshold{0.3}}.validate());
  CHECK_THROWS_AS(ControlAction{SetThreshold{1.3}}.validate(), Error);
  Pose bad;
  bad.fov = 4;
  CHECK_THROWS_AS(ControlAction{SetPose{bad}}.validate(), Error);
  physical::AudioScene audio;
  const physical::FourierSeries loud{600, 0, {{1, 0}}};
  CHECK_THROWS_AS(ControlAction{EmitAcoustic{loud}}.validate(&audio), Error);
  CHECK_NOTHROW(ControlAction{Wait{}}.validate());
  CHECK(ControlAction{Wait{}}.to_json().find("wait") != std::string::npos);
  CHECK(parse_view_policy(view_policy_name(ViewPolicy::orbit)) == ViewPolicy::orbit);
}
