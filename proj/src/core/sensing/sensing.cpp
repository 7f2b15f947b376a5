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

#include "sensing/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "json.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"

namespace conceptlab::sensing {

AveragedFrames average_frames(std::span<const std::vector<double>> frames, bool registered) {
  require(registered, "averaging requires registered frames");
  require(!frames.empty(), "averaging needs at least one frame");
  const std::size_t pixels = frames[0].size();
  for (const auto& f : frames) require(f.size() == pixels, "frames differ in size");
  const double T = static_cast<double>(frames.size());

  AveragedFrames out;
  out.mean.assign(pixels, 0.0);
  out.variance_of_mean.assign(pixels, std::numeric_limits<double>::quiet_NaN());
  if (frames.size() == 1) {
    out.mean = frames[0];
    return out;
  }
  for (const auto& f : frames) {
    for (std::size_t i = 0; i < pixels; ++i) out.mean[i] += f[i];
  }
  for (double& m : out.mean) m /= T;
  for (std::size_t i = 0; i < pixels; ++i) {
    double ss = 0.0;
    for (const auto& f : frames) {
      const double d = f[i] - out.mean[i];
      ss += d * d;
    }
    out.variance_of_mean[i] = ss / (T - 1.0) / T;
  }
  return out;
}

double stochastic_resonance(double value, std::size_t n_samples, std::uint64_t seed) {
  require(n_samples >= 1, "stochastic resonance needs at least one sample");
  Rng rng(seed);
  std::size_t ones = 0;
  for (std::size_t i = 0; i < n_samples; ++i) ones += value >= rng.uniform_open();
  return static_cast<double>(ones) / static_cast<double>(n_samples);
}

std::vector<Pose> orbit_policy(Vec2 center, double radius, std::size_t steps, double fov,
                               std::size_t pixels) {
  require(steps >= 2, "orbit needs at least two steps");
  require(radius > 0.0 && std::isfinite(radius), "orbit radius must be positive");
  std::vector<Pose> poses;
  for (std::size_t k = 0; k < steps; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(steps);
    Pose p;
    p.position = {center.x + radius * std::cos(angle), center.y + radius * std::sin(angle)};
    p.heading = angle + std::numbers::pi;
    p.fov = fov;
    p.pixels = pixels;
    p.validate();
    poses.push_back(p);
  }
  return poses;
}

void ControlAction::validate(const physical::AudioScene* audio) const {
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, SetPose>) {
          k.pose.validate();
        } else if constexpr (std::is_same_v<K, EmitAcoustic>) {
          if (audio) audio->check_bandwidth(k.series);
        } else if constexpr (std::is_same_v<K, SetThreshold>) {
          require(k.threshold >= 0.0 && k.threshold <= 1.0, "threshold must lie in [0, 1]");
        }
      },
      kind);
}

std::string ControlAction::to_json() const {
  using nlohmann::json;
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        json j;
        if constexpr (std::is_same_v<K, SetPose>) {
          j = {{"kind", "set-pose"},
               {"x", k.pose.position.x},
               {"y", k.pose.position.y},
               {"heading", k.pose.heading},
               {"fov", k.pose.fov},
               {"pixels", k.pose.pixels}};
        } else if constexpr (std::is_same_v<K, EmitAcoustic>) {
          j = {{"kind", "emit-acoustic"}, {"series", json::parse(physical::series_to_json(k.series))}};
        } else if constexpr (std::is_same_v<K, SetThreshold>) {
          j = {{"kind", "set-threshold"}, {"threshold", k.threshold}};
        } else {
          j = {{"kind", "wait"}};
        }
        return j.dump();
      },
      kind);
}

double mismatch(std::span<const double> observed, std::span<const double> predicted) {
  require(observed.size() == predicted.size(), "observation and prediction differ in size");
  double worst = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double d = std::abs(observed[i] - predicted[i]);
    if (!(d <= worst)) worst = d;  // NaN propagates as a mismatch
  }
  return worst;
}

double mismatch_threshold(double sigma, std::size_t frames) {
  require(frames >= 1, "at least one frame");
  return std::max(6.0 * sigma / std::sqrt(static_cast<double>(frames)), 1e-9);
}

HypothesisSet::HypothesisSet(std::vector<Scene2D> scenes)
    : candidates(std::move(scenes)), scores(candidates.size(), 0.0) {
  for (std::size_t i = 0; i < candidates.size(); ++i) live.push_back(i);
}

std::vector<std::size_t> cluster_sizes(const std::vector<std::vector<double>>& predictions,
                                       double threshold) {
  std::vector<std::size_t> reps;
  std::vector<std::size_t> sizes;
  for (std::size_t h = 0; h < predictions.size(); ++h) {
    bool placed = false;
    for (std::size_t c = 0; c < reps.size() && !placed; ++c) {
      if (mismatch(predictions[h], predictions[reps[c]]) <= threshold) {
        ++sizes[c];
        placed = true;
      }
    }
    if (!placed) {
      reps.push_back(h);
      sizes.push_back(1);
    }
  }
  return sizes;
}

ViewPlan plan_next_view(const HypothesisSet& hyps, std::span<const Pose> candidates,
                        const RenderOptions& options, double threshold) {
  require(hyps.size() >= 2, "planning needs at least two live hypotheses");
  require(!candidates.empty(), "planning needs at least one candidate pose");
  ViewPlan best;
  best.worst_cluster = std::numeric_limits<std::size_t>::max();
  for (std::size_t p = 0; p < candidates.size(); ++p) {
    std::vector<std::vector<double>> preds;
    for (std::size_t h : hyps.live) preds.push_back(physical::predict(hyps.candidates[h], candidates[p], options));
    const auto sizes = cluster_sizes(preds, threshold);
    const std::size_t worst = *std::max_element(sizes.begin(), sizes.end());
    if (worst < best.worst_cluster) {
      best.pose_index = p;
      best.worst_cluster = worst;
    }
  }
  if (best.worst_cluster >= hyps.size()) best = {0, hyps.size(), true};
  return best;
}

ViewPolicy parse_view_policy(std::string_view name) {
  if (name == "passive") return ViewPolicy::passive;
  if (name == "orbit") return ViewPolicy::orbit;
  if (name == "planner") return ViewPolicy::planner;
  throw Error(ErrorCode::config, "unknown view policy '" + std::string(name) + "'");
}

std::string_view view_policy_name(ViewPolicy policy) {
  switch (policy) {
    case ViewPolicy::passive: return "passive";
    case ViewPolicy::orbit: return "orbit";
    case ViewPolicy::planner: return "planner";
  }
  return "?";
}

IdentifyRun identify(std::vector<Scene2D> hypotheses, std::size_t truth, std::span<const Pose> candidates,
                     const IdentifyOptions& options) {
  require(truth < hypotheses.size(), "truth index outside the hypothesis set");
  require(!candidates.empty(), "identification needs candidate poses");
  require(options.frames >= 1, "at least one frame per observation");
  const Scene2D truth_scene = hypotheses[truth];
  HypothesisSet hyps(std::move(hypotheses));
  RenderOptions clean = options.render;
  clean.noise_sigma = 0.0;
  const double threshold = mismatch_threshold(options.render.noise_sigma, options.frames);
  const Rng root(options.seed);

  IdentifyRun run;
  for (std::size_t round = 0; round < options.max_rounds && hyps.size() > 1; ++round) {
    IdentifyRound rec;
    rec.threshold = threshold;
    switch (options.policy) {
      case ViewPolicy::passive: rec.pose_index = 0; break;
      case ViewPolicy::orbit: rec.pose_index = round % candidates.size(); break;
      case ViewPolicy::planner: {
        const ViewPlan plan = plan_next_view(hyps, candidates, clean, threshold);
        rec.pose_index = plan.pose_index;
        rec.non_exciting = plan.non_exciting;
        break;
      }
    }
    const Pose& pose = candidates[rec.pose_index];
    std::vector<std::vector<double>> frames;
    const Rng round_rng = root.split(round);
    for (std::size_t f = 0; f < options.frames; ++f) {
      RenderOptions ro = options.render;
      ro.seed = round_rng.split(f).next_u64();
      frames.push_back(physical::render(truth_scene, pose, ro).values);
    }
    const auto observed = average_frames(frames, true).mean;

    std::vector<std::size_t> kept;
    for (std::size_t h : hyps.live) {
      const auto pred = physical::predict(hyps.candidates[h], pose, clean);
      hyps.scores[h] = mismatch(observed, pred);
      if (hyps.scores[h] > threshold) {
        rec.eliminated.push_back(h);
        if (h == truth) run.truth_eliminated = true;
      } else {
        kept.push_back(h);
      }
    }
    hyps.live = std::move(kept);
    rec.live_after = hyps.size();
    run.rounds.push_back(std::move(rec));
  }
  run.final_live = hyps.live;
  run.isolated = hyps.live.size() == 1 && hyps.live[0] == truth;
  return run;
}

OccluderFamily occluder_family(std::uint64_t seed, std::size_t orbit_steps, std::size_t pixels) {
  using physical::SceneObject;
  Rng rng = Rng(seed).split("occluder-family");
  const double fov = 1.0;

  // Back segment, perpendicular-ish to the camera axis.
  const double d2 = rng.uniform(5.0, 7.0);
  const double h2 = rng.uniform(0.3, 0.9);
  const double y2 = rng.uniform(-0.4, 0.4);
  const double tilt = rng.uniform(-0.3, 0.3);
  const Vec2 b0{d2 - h2 * tilt, y2 - h2};
  const Vec2 b1{d2 + h2 * tilt, y2 + h2};

  // Occluder at distance d1 covering the back segment's angular extent with margin.
  const double d1 = rng.uniform(2.0, 3.0);
  const double reach = std::max(std::abs(b0.y / b0.x), std::abs(b1.y / b1.x));
  const double h1 = 1.15 * reach * d1 + 0.05;
  const double o_albedo = rng.uniform(0.1, 0.9);

  const double base = rng.uniform(0.1, 0.9);
  const double t0 = rng.uniform(0.2, 0.4);
  const double t1 = t0 + rng.uniform(0.2, 0.4);
  const double mark_a = rng.uniform(0.0, 0.35);
  const double mark_b = rng.uniform(0.65, 1.0);

  auto make = [&](double mark) {
    SceneObject occluder;
    occluder.points = {{d1, -h1}, {d1, h1}};
    occluder.albedo = {{o_albedo}};
    SceneObject back;
    back.points = {b0, b1};
    back.albedo = {{base}};
    back.markers = {{0, {t0, t1, mark}}};
    return Scene2D({occluder, back});
  };

  OccluderFamily fam;
  fam.hypotheses = {make(mark_a), make(mark_b)};
  if (rng.below(2) == 1) std::swap(fam.hypotheses[0], fam.hypotheses[1]);
  fam.center = {0.5 * (b0.x + b1.x), 0.5 * (b0.y + b1.y)};

  Pose front;
  front.position = {0.0, 0.0};
  front.heading = 0.0;
  front.fov = fov;
  front.pixels = pixels;
  fam.candidates.push_back(front);
  const double radius = rng.uniform(3.0, 4.0);
  for (const Pose& p : orbit_policy(fam.center, radius, orbit_steps, fov, pixels)) fam.candidates.push_back(p);
  return fam;
}

}  // namespace conceptlab::sensing
