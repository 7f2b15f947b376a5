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

#include <cmath>

#include "experiments/commands.hpp"
#include "game/game.hpp"
#include "physical/audio.hpp"
#include "physical/visual.hpp"
#include "sensing/sensing.hpp"
#include "util/rng.hpp"

namespace conceptlab::experiments {

namespace {

using physical::Pose;

std::string json_text(Config& cfg, const char* key) {
  const json& v = cfg.raw(key);
  return v.is_string() ? v.get<std::string>() : v.dump();
}

Pose pose_from(const json& j) {
  Pose p;
  p.position = {j.value("x", 0.0), j.value("y", 0.0)};
  p.heading = j.value("heading", 0.0);
  p.fov = j.value("fov", 1.0);
  p.pixels = j.value("pixels", std::size_t{64});
  p.validate();
  return p;
}

json pose_json(const Pose& p) {
  return {{"x", p.position.x}, {"y", p.position.y}, {"heading", p.heading}, {"fov", p.fov}, {"pixels", p.pixels}};
}

std::string format_param(Config& cfg) {
  const auto f = cfg.get<std::string>("format", "csv");
  check(f == "csv" || f == "bin" || f == "json", cfg.subcommand() + ": format must be csv, bin or json");
  return f;
}

}  // namespace

RunResult run_render(std::string_view text) {
  Config cfg("render", text, {"scene", "pose", "gain", "gamma", "noise_sigma", "levels", "seed", "format"});
  check(cfg.has("scene"), "render: scene is required");
  const physical::Scene2D scene = physical::Scene2D::from_json(json_text(cfg, "scene"));
  Pose pose;
  try {
    pose = cfg.has("pose") ? pose_from(cfg.raw("pose")) : Pose{};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::config, std::string("render: bad pose: ") + e.what());
  }
  cfg.note("pose", pose_json(pose));
  physical::RenderOptions ro;
  ro.gain = cfg.get<double>("gain", 1.0);
  ro.gamma = cfg.get<double>("gamma", 1.0);
  ro.noise_sigma = cfg.get<double>("noise_sigma", 0.0);
  ro.levels = cfg.get<int>("levels", 256);
  ro.seed = cfg.get<std::uint64_t>("seed", 0);
  const auto format = format_param(cfg);

  const physical::Image1D image = physical::render(scene, pose, ro);
  RunResult result;
  if (format == "bin") {
    result.artifacts.push_back({"image.bin", physical::samples_to_binary(image.values)});
  } else if (format == "json") {
    result.artifacts.push_back({"image.json", json{{"levels", image.levels}, {"values", image.values}}.dump() + "\n"});
  } else {
    result.artifacts.push_back({"image.csv", physical::image_to_csv(image)});
  }
  std::size_t covered = 0;
  for (int l : image.levels) covered += l != 0;
  result.summary = "render: " + std::to_string(image.levels.size()) + " pixels, " + std::to_string(covered) +
                   " non-background";
  return finish(cfg, std::move(result), {{"pixels", image.levels.size()}, {"non_background", covered}});
}

RunResult run_mix(std::string_view text) {
  Config cfg("mix", text, {"scene", "active", "seed", "format"});
  check(cfg.has("scene"), "mix: scene is required");
  const physical::AudioScene scene = physical::AudioScene::from_json(json_text(cfg, "scene"));
  std::optional<physical::FourierSeries> active;
  if (cfg.has("active")) active = physical::series_from_json(json_text(cfg, "active"));
  const auto seed = cfg.get<std::uint64_t>("seed", 0);
  const auto format = format_param(cfg);

  const auto samples = physical::mix(scene, active, seed);
  RunResult result;
  if (format == "bin") {
    result.artifacts.push_back({"samples.bin", physical::samples_to_binary(samples)});
  } else if (format == "json") {
    result.artifacts.push_back({"samples.json", json(samples).dump() + "\n"});
  } else {
    result.artifacts.push_back({"samples.csv", physical::samples_to_csv(samples)});
  }
  double peak = 0.0;
  for (double v : samples) peak = std::max(peak, std::abs(v));
  result.summary = "mix: " + std::to_string(samples.size()) + " samples from " +
                   std::to_string(scene.sources.size() + (active ? 1 : 0)) + " sources, peak " + fmt_double(peak);
  return finish(cfg, std::move(result), {{"samples", samples.size()}, {"peak", peak}});
}

RunResult run_sense(std::string_view text) {
  Config cfg("sense", text,
             {"policy", "scene", "family", "averaging_sigma", "trials", "rounds", "seed", "averaging_seeds", "averaging_frames", "averaging_pixels", "resonance_seeds", "noise_sigma", "frames", "pixels",
              "values", "samples", "orbit_steps", "tolerance"});
  const auto policies = list_param<std::string>(cfg, "policy", {"planner"});
  const auto seed = cfg.get<std::uint64_t>("seed", 0);
  RunResult result;
  json summary = json::object();
  std::vector<std::string> lines;

  for (const std::string& policy : policies) {
    if (policy == "averaging") {
      const auto sigma = cfg.get<double>("averaging_sigma", 1.0);
      const auto frames = list_param<std::uint64_t>(cfg, "averaging_frames", {10, 100, 1000});
      const auto pixels = cfg.get<std::uint64_t>("averaging_pixels", 1000);
      const auto seeds = cfg.get<std::uint64_t>("averaging_seeds", 30);
      const auto tolerance = cfg.get<double>("tolerance", 0.2);
      check(sigma > 0.0, "sense: averaging needs averaging_sigma > 0");
      const physical::Scene2D scene = game::random_scene(Rng(seed).split("sense/scene").next_u64());
      Pose pose;
      pose.position = {-5.0, 0.0};
      pose.pixels = pixels;
      const auto truth = physical::predict(scene, pose, {});
      std::string csv = "frames,seed,empirical_variance,expected_variance,ratio,mean_variance_estimate,pass\n";
      std::size_t passed = 0, total = 0;
      for (std::uint64_t T : frames) {
        check(T >= 1, "sense: frames must be >= 1");
        for (std::uint64_t s = 0; s < seeds; ++s) {
          const Rng rng = Rng(seed).split("sense/averaging").split(T).split(s);
          std::vector<std::vector<double>> stack;
          for (std::uint64_t f = 0; f < T; ++f) {
            physical::RenderOptions ro;
            ro.noise_sigma = sigma;
            ro.seed = rng.split(f).next_u64();
            stack.push_back(physical::render(scene, pose, ro).values);
          }
          const auto avg = sensing::average_frames(stack, true);
          double sq = 0.0, est = 0.0;
          for (std::size_t i = 0; i < pixels; ++i) {
            sq += (avg.mean[i] - truth[i]) * (avg.mean[i] - truth[i]);
            est += avg.variance_of_mean[i];
          }
          const double emp = sq / static_cast<double>(pixels);
          const double expected = sigma * sigma / static_cast<double>(T);
          const double ratio = emp / expected;
          const bool ok = std::abs(ratio - 1.0) <= tolerance;
          passed += ok;
          ++total;
          csv += std::to_string(T) + "," + std::to_string(s) + "," + fmt_double(emp) + "," + fmt_double(expected) + "," +
                 fmt_double(ratio) + "," + fmt_double(est / static_cast<double>(pixels)) + "," + (ok ? "1" : "0") + "\n";
        }
      }
      result.artifacts.push_back({"averaging.csv", csv});
      summary["averaging"] = {{"passed", passed}, {"total", total}};
      lines.push_back("averaging " + std::to_string(passed) + "/" + std::to_string(total) + " within tolerance");
    } else if (policy == "resonance") {
      const auto values = list_param<double>(cfg, "values", {0.1, 0.25, 0.5, 0.9});
      const auto samples = cfg.get<std::uint64_t>("samples", 10'000);
      const auto seeds = cfg.get<std::uint64_t>("resonance_seeds", 100);
      std::string csv = "value,seed,estimate,error,standard_error,within_5se\n";
      json per_value = json::array();
      bool all_ok = true;
      for (double v : values) {
        check(v >= 0.0 && v <= 1.0, "sense: resonance values must lie in [0, 1]");
        const double se = std::sqrt(v * (1.0 - v) / static_cast<double>(samples));
        std::size_t within = 0;
        for (std::uint64_t s = 0; s < seeds; ++s) {
          const std::uint64_t sd = Rng(seed).split("sense/resonance").split(s).split(fmt_double(v)).next_u64();
          const double est = sensing::stochastic_resonance(v, samples, sd);
          const bool ok = std::abs(est - v) <= 5.0 * se;
          within += ok;
          csv += fmt_double(v) + "," + std::to_string(s) + "," + fmt_double(est) + "," + fmt_double(est - v) + "," +
                 fmt_double(se) + "," + (ok ? "1" : "0") + "\n";
        }
        all_ok = all_ok && within * 100 >= 99 * seeds;
        per_value.push_back({{"value", v}, {"within_5se", within}, {"seeds", seeds}});
      }
      result.artifacts.push_back({"resonance.csv", csv});
      summary["resonance"] = {{"per_value", per_value}, {"all_pass", all_ok}};
      lines.push_back(std::string("resonance ") + (all_ok ? "all values pass" : "some values fail"));
    } else {
      const sensing::ViewPolicy vp = sensing::parse_view_policy(policy);
      const auto sigma = cfg.get<double>("noise_sigma", 0.01);
      const auto frames = cfg.get<std::uint64_t>("frames", 1);
      const auto orbit_steps = cfg.get<std::uint64_t>("orbit_steps", 6);
      const auto pixels = cfg.get<std::uint64_t>("pixels", 64);

      struct Trial {
        std::vector<physical::Scene2D> hyps;
        std::size_t truth = 0;
        std::vector<Pose> candidates;
      };
      std::vector<Trial> trials;
      if (cfg.has("scene")) {
        const json doc = json::parse(json_text(cfg, "scene"));
        Trial t;
        try {
          for (const json& h : doc.at("hypotheses")) t.hyps.push_back(physical::Scene2D::from_json(h.dump()));
          t.truth = doc.value("truth", std::size_t{0});
          for (const json& p : doc.at("candidates")) t.candidates.push_back(pose_from(p));
        } catch (const json::exception& e) {
          throw Error(ErrorCode::config, std::string("sense: bad hypothesis file: ") + e.what());
        }
        trials.push_back(std::move(t));
      } else {
        const auto family = cfg.get<std::string>("family", "occluder");
        check(family == "occluder", "sense: unknown family '" + family + "'");
        const auto count = cfg.get<std::uint64_t>("trials", 50);
        for (std::uint64_t i = 0; i < count; ++i) {
          auto fam = sensing::occluder_family(Rng(seed).split("sense/family").split(i).next_u64(), orbit_steps, pixels);
          const std::size_t truth = Rng(seed).split("sense/truth").split(i).below(fam.hypotheses.size());
          trials.push_back({std::move(fam.hypotheses), truth, std::move(fam.candidates)});
        }
      }

      json runs = json::array();
      std::string csv = "policy,trial,round,pose_index,eliminated,live_after,non_exciting\n";
      std::size_t isolated = 0, within_bound = 0, false_elim = 0;
      for (std::size_t i = 0; i < trials.size(); ++i) {
        const Trial& t = trials[i];
        sensing::IdentifyOptions io;
        io.policy = vp;
        io.max_rounds = cfg.has("rounds") ? cfg.get<std::uint64_t>("rounds", 0) : t.candidates.size();
        io.frames = frames;
        io.render.noise_sigma = sigma;
        io.seed = Rng(seed).split("sense/observe").split(i).next_u64();
        const auto run = sensing::identify(t.hyps, t.truth, t.candidates, io);
        isolated += run.isolated;
        within_bound += run.isolated && run.rounds.size() <= t.candidates.size();
        false_elim += run.truth_eliminated;
        json rounds = json::array();
        for (std::size_t r = 0; r < run.rounds.size(); ++r) {
          const auto& rd = run.rounds[r];
          rounds.push_back({{"pose_index", rd.pose_index},
                            {"pose", pose_json(t.candidates[rd.pose_index])},
                            {"eliminated", rd.eliminated},
                            {"live_after", rd.live_after},
                            {"non_exciting", rd.non_exciting}});
          std::string elim;
          for (std::size_t e : rd.eliminated) elim += (elim.empty() ? "" : ";") + std::to_string(e);
          csv += policy + "," + std::to_string(i) + "," + std::to_string(r + 1) + "," + std::to_string(rd.pose_index) +
                 "," + elim + "," + std::to_string(rd.live_after) + "," + (rd.non_exciting ? "1" : "0") + "\n";
        }
        runs.push_back({{"trial", i},
                        {"truth", t.truth},
                        {"candidates", t.candidates.size()},
                        {"isolated", run.isolated},
                        {"truth_eliminated", run.truth_eliminated},
                        {"final_live", run.final_live},
                        {"rounds", rounds}});
      }
      result.artifacts.push_back({"run_" + policy + ".json", json{{"policy", policy}, {"trials", runs}}.dump(2) + "\n"});
      result.artifacts.push_back({"rounds_" + policy + ".csv", csv});
      summary[policy] = {{"trials", trials.size()},
                         {"isolated", isolated},
                         {"isolated_within_bound", within_bound},
                         {"truth_eliminated", false_elim}};
      lines.push_back(policy + " isolated " + std::to_string(within_bound) + "/" + std::to_string(trials.size()) +
                      " within |candidates| rounds");
    }
  }
  std::string line = "sense:";
  for (std::size_t i = 0; i < lines.size(); ++i) line += (i ? "; " : " ") + lines[i];
  result.summary = line;
  return finish(cfg, std::move(result), summary);
}

}  // namespace conceptlab::experiments
