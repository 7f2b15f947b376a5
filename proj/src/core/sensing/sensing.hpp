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
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "physical/audio.hpp"
#include "physical/visual.hpp"

namespace conceptlab::sensing {

using physical::Pose;
using physical::RenderOptions;
using physical::Scene2D;
using physical::Vec2;

struct AveragedFrames {
  std::vector<double> mean;
  // Per-pixel sample variance divided by T; NaN when T = 1.
  std::vector<double> variance_of_mean;
};

// Frames must be registered (same pose, same static scene).
AveragedFrames average_frames(std::span<const std::vector<double>> frames, bool registered);

// Mean of [value >= theta_i] over thresholds theta_i ~ U(0, 1).
double stochastic_resonance(double value, std::size_t n_samples, std::uint64_t seed);

// `steps` poses evenly spaced on a circle around `center`, facing it.
std::vector<Pose> orbit_policy(Vec2 center, double radius, std::size_t steps, double fov = 1.0,
                               std::size_t pixels = 64);

struct SetPose {
  Pose pose;
};
struct EmitAcoustic {
  physical::FourierSeries series;
};
struct SetThreshold {
  double threshold = 0.5;
};
struct Wait {};

struct ControlAction {
  std::variant<SetPose, EmitAcoustic, SetThreshold, Wait> kind;

  void validate(const physical::AudioScene* audio = nullptr) const;
  std::string to_json() const;
};

// Largest per-pixel absolute difference.
double mismatch(std::span<const double> observed, std::span<const double> predicted);
// 6 sigma / sqrt(T), floored at 1e-9 so exact comparisons survive rounding.
double mismatch_threshold(double sigma, std::size_t frames);

struct HypothesisSet {
  std::vector<Scene2D> candidates;
  std::vector<std::size_t> live;  // indices into candidates, increasing
  std::vector<double> scores;     // latest mismatch per candidate

  explicit HypothesisSet(std::vector<Scene2D> scenes);
  std::size_t size() const { return live.size(); }
};

struct ViewPlan {
  std::size_t pose_index = 0;
  std::size_t worst_cluster = 0;
  bool non_exciting = false;
};

// Greedy clustering of predicted renders: each hypothesis joins the first
// cluster whose representative is within `threshold`. Returns cluster sizes.
std::vector<std::size_t> cluster_sizes(const std::vector<std::vector<double>>& predictions,
                                       double threshold);

// Minimax split: the candidate pose whose largest cluster is smallest, ties to
// the lowest index. Flags non_exciting when no pose splits the live set.
ViewPlan plan_next_view(const HypothesisSet& hyps, std::span<const Pose> candidates,
                        const RenderOptions& options, double threshold);

enum class ViewPolicy { passive, orbit, planner };
ViewPolicy parse_view_policy(std::string_view name);
std::string_view view_policy_name(ViewPolicy policy);

struct IdentifyOptions {
  ViewPolicy policy = ViewPolicy::planner;
  std::size_t max_rounds = 10;
  std::size_t frames = 1;  // frames averaged per observation
  RenderOptions render;    // noise_sigma applies to observations
  std::uint64_t seed = 0;
};

struct IdentifyRound {
  std::size_t pose_index = 0;
  double threshold = 0.0;
  std::vector<std::size_t> eliminated;
  std::size_t live_after = 0;
  bool non_exciting = false;
};

struct IdentifyRun {
  std::vector<IdentifyRound> rounds;
  std::vector<std::size_t> final_live;
  bool isolated = false;  // live set is exactly {truth}
  bool truth_eliminated = false;
};

// Plan, observe the true scene, eliminate hypotheses whose prediction misses
// the observation by more than the threshold. Stops when one hypothesis is
// left or the round budget runs out.
IdentifyRun identify(std::vector<Scene2D> hypotheses, std::size_t truth, std::span<const Pose> candidates,
                     const IdentifyOptions& options);

// Random two-hypothesis family: an occluder in front of pose 0 hides a marked
// back segment; the hypotheses differ only in the marker albedo. Candidate
// poses are the front pose followed by an orbit around the back segment.
struct OccluderFamily {
  std::vector<Scene2D> hypotheses;
  std::vector<Pose> candidates;
  Vec2 center;
};
OccluderFamily occluder_family(std::uint64_t seed, std::size_t orbit_steps = 6, std::size_t pixels = 64);

}  // namespace conceptlab::sensing
