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
#include <sstream>

#include "experiments/commands.hpp"
#include "game/game.hpp"
#include "util/rng.hpp"

namespace conceptlab::experiments {

namespace {

using game::AudioScene;
using game::Pose;
using game::Scene2D;

AudioScene default_audio(std::uint64_t seed) {
  Rng rng = Rng(seed).split("audio-scene");
  AudioScene s;
  s.sample_rate = 1000.0;
  s.window = 256;
  for (int k = 0; k < 2; ++k) {
    physical::FourierSeries src;
    src.fundamental_hz = rng.uniform(30.0, 80.0);
    src.delay_s = rng.uniform(0.0, 0.01);
    for (int h = 0; h < 3; ++h) src.harmonics.push_back({rng.uniform(0.0, 1.0), rng.uniform(0.0, 2.0 * std::numbers::pi)});
    s.sources.push_back(src);
  }
  return s;
}

physical::Vec2 scene_center(const Scene2D& scene) {
  double x = 0.0, y = 0.0;
  std::size_t n = 0;
  for (const auto& seg : scene.segments()) {
    x += seg.a.x + seg.b.x;
    y += seg.a.y + seg.b.y;
    n += 2;
  }
  return n == 0 ? physical::Vec2{} : physical::Vec2{x / static_cast<double>(n), y / static_cast<double>(n)};
}

}  // namespace

RunResult run_game(std::string_view text) {
  Config cfg("game", text,
             {"modality", "authority", "prover", "policy", "rounds", "trials", "seed", "noise_sigma", "frames", "scene",
              "pixels", "fov", "preseed"});
  const auto modality = game::parse_modality(cfg.get<std::string>("modality", "visual"));
  const auto authorities = list_param<std::string>(cfg, "authority", {"active"});
  const auto provers = list_param<std::string>(cfg, "prover", {"replay"});
  const auto rounds = cfg.get<std::uint64_t>("rounds", 200);
  const auto trials = cfg.get<std::uint64_t>("trials", 1);
  const auto seed = cfg.get<std::uint64_t>("seed", 0);
  const auto sigma = cfg.get<double>("noise_sigma", 0.01);
  const auto frames = cfg.get<std::uint64_t>("frames", 1);
  const auto pixels = cfg.get<std::uint64_t>("pixels", 64);
  const auto fov = cfg.get<double>("fov", 1.0);
  const bool preseed = cfg.get<bool>("preseed", true);
  const std::string policy_override = cfg.get<std::string>("policy", "");
  std::optional<std::string> scene_text;
  if (cfg.has("scene")) {
    const json& s = cfg.raw("scene");
    scene_text = s.is_string() ? s.get<std::string>() : s.dump();
  }
  check(trials >= 1, "game: at least one trial");
  const bool visual = modality == game::Modality::visual;

  RunResult result;
  json summary = {{"modality", game::modality_name(modality)}, {"arms", json::object()}};
  std::vector<std::string> lines;
  std::string trial_csv;

  for (const std::string& auth_name : authorities) {
    const auto authority = game::parse_authority(auth_name);
    for (const std::string& prover_name : provers) {
      const std::string arm = auth_name + "_" + prover_name;
      std::vector<game::GameTranscript> transcripts;
      std::string jsonl;
      std::size_t equivalent = 0;
      for (std::uint64_t i = 0; i < trials; ++i) {
        const std::uint64_t trial_seed = Rng(seed).split("game/trial").split(i).next_u64();
        game::VerifierConfig v;
        v.modality = modality;
        v.authority = authority;
        v.max_rounds = rounds;
        v.frames = frames;
        v.noise_sigma = sigma;
        v.fov = fov;
        v.pixels = pixels;
        if (!policy_override.empty()) {
          v.policy = game::parse_policy(policy_override);
        } else {
          v.policy = authority == game::Authority::active ? game::ChallengePolicy::random_novel
                                                          : game::ChallengePolicy::fixed;
        }

        std::variant<Scene2D, AudioScene> model;
        game::ProverKind prover;
        if (visual) {
          const Scene2D scene = scene_text ? Scene2D::from_json(*scene_text) : game::random_scene(trial_seed);
          const auto center = scene_center(scene);
          Pose fixed;
          fixed.position = {center.x - 4.0, center.y};
          fixed.fov = fov;
          fixed.pixels = pixels;
          v.poses = {fixed};
          v.novel_pose.center = center;
          model = scene;
          if (prover_name == "physical") {
            prover = game::PhysicalProver{scene};
          } else if (prover_name == "replay") {
            prover = game::ReplayLagSpoofer{scene, preseed ? std::vector<Pose>{fixed} : std::vector<Pose>{}};
          } else if (prover_name == "perfect") {
            prover = game::PerfectModelSpoofer{scene};
          } else {
            throw Error(ErrorCode::config, "game: prover '" + prover_name + "' is not available for visual games");
          }
        } else {
          const AudioScene scene = scene_text ? AudioScene::from_json(*scene_text) : default_audio(trial_seed);
          model = scene;
          if (prover_name == "physical") {
            prover = game::PhysicalProver{scene};
          } else if (prover_name == "perfect") {
            prover = game::PerfectModelSpoofer{scene};
          } else if (prover_name == "acoustic-additive") {
            prover = game::AcousticAdditiveSpoofer{scene};
          } else {
            throw Error(ErrorCode::config, "game: prover '" + prover_name + "' is not available for acoustic games");
          }
        }

        game::GameTranscript t = game::run_game(v, prover, model, trial_seed);
        if (!visual && authority == game::Authority::active) {
          const auto passive = game::acoustic_passive_replay(t, v, std::get<AudioScene>(model));
          equivalent += game::same_observations(t, passive);
        }
        jsonl += t.to_jsonl();
        for (auto& r : t.rounds) {
          r.response = {};
          r.prediction = {};
        }
        transcripts.push_back(std::move(t));
      }
      const auto stats = game::detection_statistics(transcripts);
      std::size_t max_tau = 0;
      for (const auto& t : transcripts) max_tau = std::max<std::size_t>(max_tau, t.detection_round.value_or(0));

      result.artifacts.push_back({"transcripts_" + arm + ".jsonl", jsonl});
      result.artifacts.push_back({"per_round_" + arm + ".csv", stats.per_round_csv()});
      std::string csv = game::trials_csv(transcripts);
      if (trial_csv.empty()) {
        trial_csv = "arm," + csv.substr(0, csv.find('\n') + 1);
      }
      std::stringstream ss(csv.substr(csv.find('\n') + 1));
      for (std::string row; std::getline(ss, row);) trial_csv += arm + "," + row + "\n";

      json arm_summary = json::parse(stats.to_json());
      arm_summary["max_tau"] = max_tau;
      arm_summary["rounds"] = rounds;
      if (!visual && authority == game::Authority::active) arm_summary["passive_replay_equivalent"] = equivalent;
      summary["arms"][arm] = arm_summary;
      std::string line = arm + " detection rate " + fmt_double(stats.rate);
      if (stats.tau_median) line += " (median tau " + fmt_double(*stats.tau_median) + ")";
      if (!visual && authority == game::Authority::active) {
        line += ", passive replay equivalent " + std::to_string(equivalent) + "/" + std::to_string(trials);
      }
      lines.push_back(line);
    }
  }
  result.artifacts.push_back({"trials.csv", trial_csv});
  std::string line = "game:";
  for (std::size_t i = 0; i < lines.size(); ++i) line += (i ? "; " : " ") + lines[i];
  result.summary = line;
  return finish(cfg, std::move(result), summary);
}

RunResult run_stats(std::string_view text) {
  Config cfg("stats", text, {"transcripts", "seed"});
  cfg.get<std::uint64_t>("seed", 0);
  check(cfg.has("transcripts"), "stats: transcripts are required");
  const json& raw = cfg.raw("transcripts");
  std::string content;
  if (raw.is_array()) {
    for (const json& part : raw) content += part.get<std::string>();
  } else {
    content = raw.get<std::string>();
  }

  std::vector<game::GameTranscript> transcripts;
  std::stringstream ss(content);
  std::size_t line_no = 0;
  for (std::string line; std::getline(ss, line);) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
      if (j.value("type", "") == "header") {
        game::GameTranscript t;
        t.seed = j.at("seed").get<std::uint64_t>();
        t.modality = game::parse_modality(j.at("modality").get<std::string>());
        t.authority = game::parse_authority(j.at("authority").get<std::string>());
        t.prover = j.at("prover").get<std::string>();
        t.threshold = j.at("threshold").get<double>();
        if (!j.at("detection_round").is_null()) t.detection_round = j["detection_round"].get<std::size_t>();
        transcripts.push_back(std::move(t));
      } else {
        check(!transcripts.empty(), "stats: round before any header at line " + std::to_string(line_no));
        game::GameRound r;
        r.index = j.at("round").get<std::size_t>();
        r.mismatch = j.at("mismatch").get<double>();
        r.falsified = j.at("verdict").get<std::string>() == "falsified";
        transcripts.back().rounds.push_back(std::move(r));
      }
    } catch (const json::exception& e) {
      throw Error(ErrorCode::config, "stats: bad transcript line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  check(!transcripts.empty(), "stats: no transcripts found");
  const auto stats = game::detection_statistics(transcripts);
  RunResult result;
  result.artifacts.push_back({"per_round.csv", stats.per_round_csv()});
  result.artifacts.push_back({"trials.csv", game::trials_csv(transcripts)});
  json summary = json::parse(stats.to_json());
  result.summary = "stats: " + std::to_string(stats.trials) + " transcripts, detection rate " + fmt_double(stats.rate) +
                   (stats.tau_median ? ", median tau " + fmt_double(*stats.tau_median) : ", no detections");
  return finish(cfg, std::move(result), summary);
}

}  // namespace conceptlab::experiments
