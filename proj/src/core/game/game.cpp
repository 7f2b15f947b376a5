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

#include "game/game.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "json.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"

namespace conceptlab::game {

namespace {

using nlohmann::json;
using Model = std::variant<Scene2D, AudioScene>;

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::vector<double> average(const std::vector<std::vector<double>>& frames) {
  return sensing::average_frames(frames, true).mean;
}

// What the channel delivers for a physical scene under a challenge.
std::vector<double> observe(const Model& scene, const ControlAction& challenge, const VerifierConfig& v,
                            std::uint64_t channel_seed) {
  const Rng rng(channel_seed);
  std::vector<std::vector<double>> frames;
  for (std::size_t f = 0; f < v.frames; ++f) {
    const std::uint64_t seed = rng.split(f).next_u64();
    if (const auto* visual = std::get_if<Scene2D>(&scene)) {
      physical::RenderOptions ro = v.render;
      ro.noise_sigma = v.noise_sigma;
      ro.seed = seed;
      frames.push_back(physical::render(*visual, std::get<sensing::SetPose>(challenge.kind).pose, ro).values);
    } else {
      AudioScene audio = std::get<AudioScene>(scene);
      audio.noise_sigma = v.noise_sigma;
      std::optional<FourierSeries> active;
      if (const auto* emit = std::get_if<sensing::EmitAcoustic>(&challenge.kind)) active = emit->series;
      frames.push_back(physical::mix(audio, active, seed));
    }
  }
  return average(frames);
}

std::vector<double> predict(const Model& model, const ControlAction& challenge, const VerifierConfig& v) {
  if (const auto* visual = std::get_if<Scene2D>(&model)) {
    physical::RenderOptions ro = v.render;
    ro.noise_sigma = 0.0;
    return physical::predict(*visual, std::get<sensing::SetPose>(challenge.kind).pose, ro);
  }
  AudioScene audio = std::get<AudioScene>(model);
  audio.noise_sigma = 0.0;
  std::optional<FourierSeries> active;
  if (const auto* emit = std::get_if<sensing::EmitAcoustic>(&challenge.kind)) active = emit->series;
  return physical::mix(audio, active, 0);
}

Pose novel_pose(const VerifierConfig& v, Rng& rng) {
  const NovelPoseRange& r = v.novel_pose;
  const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double radius = rng.uniform(r.radius_lo, r.radius_hi);
  Pose p;
  p.position = {r.center.x + radius * std::cos(angle), r.center.y + radius * std::sin(angle)};
  p.heading = angle + std::numbers::pi + rng.uniform(-r.heading_jitter, r.heading_jitter);
  p.fov = v.fov;
  p.pixels = v.pixels;
  return p;
}

FourierSeries novel_tone(const VerifierConfig& v, Rng& rng) {
  const NovelToneRange& r = v.novel_tone;
  FourierSeries s;
  s.fundamental_hz = rng.uniform(r.fundamental_lo, r.fundamental_hi);
  for (std::size_t h = 0; h < r.harmonics; ++h) {
    s.harmonics.push_back({rng.uniform(0.0, r.amplitude_max), rng.uniform(0.0, 2.0 * std::numbers::pi)});
  }
  return s;
}

// Planner state for the visual verifier: rival models still consistent.
struct PlannerState {
  sensing::HypothesisSet hyps;
  explicit PlannerState(const Scene2D& model, const std::vector<Scene2D>& alternatives)
      : hyps([&] {
          std::vector<Scene2D> all{model};
          all.insert(all.end(), alternatives.begin(), alternatives.end());
          return all;
        }()) {}
};

class Prover {
 public:
  Prover(const ProverKind& kind, const VerifierConfig& v, const Rng& root) : kind_(kind), v_(v) {
    if (const auto* replay = std::get_if<ReplayLagSpoofer>(&kind_)) {
      const Rng pre = root.split("preseed");
      for (std::size_t i = 0; i < replay->preseed.size(); ++i) {
        const ControlAction c{sensing::SetPose{replay->preseed[i]}};
        memory_.push_back({replay->preseed[i], observe(replay->target, c, v_, pre.split(i).next_u64())});
      }
    }
  }

  std::vector<double> respond(const ControlAction& challenge, std::uint64_t channel_seed) {
    return std::visit(
        [&](const auto& k) -> std::vector<double> {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, PhysicalProver>) {
            return observe(k.scene, challenge, v_, channel_seed);
          } else if constexpr (std::is_same_v<K, PerfectModelSpoofer>) {
            return observe(k.model, challenge, v_, channel_seed);
          } else if constexpr (std::is_same_v<K, AcousticAdditiveSpoofer>) {
            AudioScene played = k.base;
            if (const auto* emit = std::get_if<sensing::EmitAcoustic>(&challenge.kind)) {
              played = physical::with_source(std::move(played), emit->series);
            }
            return observe(Model{played}, ControlAction{sensing::Wait{}}, v_, channel_seed);
          } else {
            const Pose& pose = std::get<sensing::SetPose>(challenge.kind).pose;
            std::vector<double> out;
            if (auto it = std::find_if(memory_.begin(), memory_.end(), [&](const auto& m) { return m.first == pose; });
                it != memory_.end()) {
              out = it->second;
            } else if (!memory_.empty()) {
              out = memory_.back().second;
            } else {
              out.assign(pose.pixels, 0.0);
            }
            // Learns the genuine answer once the round is over.
            memory_.push_back({pose, observe(k.target, challenge, v_, channel_seed)});
            return out;
          }
        },
        kind_);
  }

 private:
  const ProverKind& kind_;
  const VerifierConfig& v_;
  std::vector<std::pair<Pose, std::vector<double>>> memory_;
};

double quantile(std::vector<double> sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

void VerifierConfig::validate() const {
  require(max_rounds >= 1, "verifier: at least one round", ErrorCode::config);
  require(frames >= 1, "verifier: at least one frame", ErrorCode::config);
  require(noise_sigma >= 0.0 && std::isfinite(noise_sigma), "verifier: noise sigma must be >= 0",
          ErrorCode::config);
  if (authority == Authority::passive) {
    require(policy == ChallengePolicy::fixed || policy == ChallengePolicy::scripted,
            "verifier: a passive verifier uses a fixed or scripted challenge sequence", ErrorCode::config);
  }
  if (modality == Modality::visual) {
    if (policy != ChallengePolicy::random_novel) {
      require(!poses.empty(), "verifier: policy needs at least one pose", ErrorCode::config);
    }
    for (const Pose& p : poses) p.validate();
  } else {
    require(policy == ChallengePolicy::fixed || policy == ChallengePolicy::random_novel,
            "verifier: acoustic challenges are silence (fixed) or random tones", ErrorCode::config);
    require(authority == Authority::active || policy == ChallengePolicy::fixed,
            "verifier: a passive acoustic verifier cannot emit", ErrorCode::config);
  }
}

double VerifierConfig::threshold() const { return sensing::mismatch_threshold(noise_sigma, frames); }

std::string_view prover_name(const ProverKind& prover) {
  switch (prover.index()) {
    case 0: return "physical";
    case 1: return "replay";
    case 2: return "perfect";
    default: return "acoustic-additive";
  }
}

Modality parse_modality(std::string_view name) {
  if (name == "visual") return Modality::visual;
  if (name == "acoustic") return Modality::acoustic;
  throw Error(ErrorCode::config, "unknown modality '" + std::string(name) + "'");
}

Authority parse_authority(std::string_view name) {
  if (name == "passive") return Authority::passive;
  if (name == "active") return Authority::active;
  throw Error(ErrorCode::config, "unknown authority '" + std::string(name) + "'");
}

ChallengePolicy parse_policy(std::string_view name) {
  if (name == "fixed") return ChallengePolicy::fixed;
  if (name == "scripted") return ChallengePolicy::scripted;
  if (name == "planner") return ChallengePolicy::planner;
  if (name == "random-novel") return ChallengePolicy::random_novel;
  throw Error(ErrorCode::config, "unknown challenge policy '" + std::string(name) + "'");
}

std::string_view modality_name(Modality m) { return m == Modality::visual ? "visual" : "acoustic"; }
std::string_view authority_name(Authority a) { return a == Authority::passive ? "passive" : "active"; }
std::string_view policy_name(ChallengePolicy p) {
  switch (p) {
    case ChallengePolicy::fixed: return "fixed";
    case ChallengePolicy::scripted: return "scripted";
    case ChallengePolicy::planner: return "planner";
    case ChallengePolicy::random_novel: return "random-novel";
  }
  return "?";
}

std::string vector_hash(const std::vector<double>& v) {
  std::string bytes(v.size() * 8, '\0');
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto bits = std::bit_cast<std::uint64_t>(v[i]);
    for (int b = 0; b < 8; ++b) bytes[i * 8 + b] = static_cast<char>((bits >> (8 * b)) & 0xff);
  }
  return hex64(fnv1a64(bytes));
}

std::string GameTranscript::to_jsonl() const {
  std::string out = json{{"type", "header"},
                         {"seed", seed},
                         {"modality", modality_name(modality)},
                         {"authority", authority_name(authority)},
                         {"prover", prover},
                         {"threshold", threshold},
                         {"rounds", rounds.size()},
                         {"detection_round", detection_round ? json(*detection_round) : json(nullptr)}}
                        .dump();
  out += '\n';
  for (const GameRound& r : rounds) {
    out += json{{"round", r.index},
                {"challenge", json::parse(r.challenge.to_json())},
                {"channel_seed", r.channel_seed},
                {"response_hash", vector_hash(r.response)},
                {"prediction_hash", vector_hash(r.prediction)},
                {"mismatch", r.mismatch},
                {"verdict", r.falsified ? "falsified" : "consistent"}}
               .dump();
    out += '\n';
  }
  return out;
}

GameTranscript run_game(const VerifierConfig& verifier, const ProverKind& prover, const Model& model,
                        std::uint64_t seed) {
  verifier.validate();
  const bool visual = verifier.modality == Modality::visual;
  require(std::holds_alternative<Scene2D>(model) == visual, "game: model does not match the modality",
          ErrorCode::config);
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, PhysicalProver>) {
          require(std::holds_alternative<Scene2D>(k.scene) == visual, "game: prover scene does not match the modality",
                  ErrorCode::config);
        } else if constexpr (std::is_same_v<K, PerfectModelSpoofer>) {
          require(std::holds_alternative<Scene2D>(k.model) == visual, "game: prover model does not match the modality",
                  ErrorCode::config);
        } else if constexpr (std::is_same_v<K, ReplayLagSpoofer>) {
          require(visual, "game: the replay spoofer is visual only", ErrorCode::config);
        } else {
          require(!visual, "game: the additive spoofer is acoustic only", ErrorCode::config);
        }
      },
      prover);

  const Rng root(seed);
  Rng challenge_rng = root.split("challenge");
  const Rng channel = root.split("channel");
  Prover responder(prover, verifier, root);
  std::optional<PlannerState> planner;
  if (visual && verifier.policy == ChallengePolicy::planner) {
    planner.emplace(std::get<Scene2D>(model), verifier.alternatives);
  }

  GameTranscript t;
  t.seed = seed;
  t.modality = verifier.modality;
  t.authority = verifier.authority;
  t.prover = std::string(prover_name(prover));
  t.threshold = verifier.threshold();

  for (std::size_t round = 1; round <= verifier.max_rounds; ++round) {
    GameRound r;
    r.index = round;
    r.channel_seed = channel.split(round).next_u64();
    const std::size_t cycle = verifier.poses.empty() ? 0 : (round - 1) % verifier.poses.size();
    if (visual) {
      Pose pose;
      switch (verifier.policy) {
        case ChallengePolicy::fixed: pose = verifier.poses[0]; break;
        case ChallengePolicy::scripted: pose = verifier.poses[cycle]; break;
        case ChallengePolicy::random_novel: pose = novel_pose(verifier, challenge_rng); break;
        case ChallengePolicy::planner: {
          pose = verifier.poses[cycle];
          if (planner->hyps.size() > 1) {
            physical::RenderOptions clean = verifier.render;
            clean.noise_sigma = 0.0;
            const auto plan = sensing::plan_next_view(planner->hyps, verifier.poses, clean, t.threshold);
            if (!plan.non_exciting) pose = verifier.poses[plan.pose_index];
          }
          break;
        }
      }
      r.challenge = ControlAction{sensing::SetPose{pose}};
    } else if (verifier.policy == ChallengePolicy::random_novel) {
      r.challenge = ControlAction{sensing::EmitAcoustic{novel_tone(verifier, challenge_rng)}};
    } else {
      r.challenge = ControlAction{sensing::Wait{}};
    }
    if (!visual) r.challenge.validate(&std::get<AudioScene>(model));

    r.response = responder.respond(r.challenge, r.channel_seed);
    r.prediction = predict(model, r.challenge, verifier);
    r.mismatch = sensing::mismatch(r.response, r.prediction);
    r.falsified = !(r.mismatch <= t.threshold);

    if (planner && planner->hyps.size() > 1) {
      physical::RenderOptions clean = verifier.render;
      clean.noise_sigma = 0.0;
      const Pose& pose = std::get<sensing::SetPose>(r.challenge.kind).pose;
      std::vector<std::size_t> kept;
      for (std::size_t h : planner->hyps.live) {
        if (sensing::mismatch(r.response, physical::predict(planner->hyps.candidates[h], pose, clean)) <= t.threshold) {
          kept.push_back(h);
        }
      }
      planner->hyps.live = std::move(kept);
    }

    const bool stop = r.falsified;
    t.rounds.push_back(std::move(r));
    if (stop) {
      t.detection_round = round;
      break;
    }
  }
  return t;
}

GameTranscript verify_physical_vs_physical(const VerifierConfig& verifier, const Model& model,
                                           const Model& prover_scene, std::uint64_t seed) {
  return run_game(verifier, PhysicalProver{prover_scene}, model, seed);
}

GameTranscript acoustic_passive_replay(const GameTranscript& active, const VerifierConfig& verifier,
                                       const AudioScene& model) {
  require(active.modality == Modality::acoustic, "replay: transcript is not acoustic", ErrorCode::config);
  VerifierConfig passive = verifier;
  passive.authority = Authority::passive;
  passive.policy = ChallengePolicy::fixed;

  GameTranscript t;
  t.seed = active.seed;
  t.modality = Modality::acoustic;
  t.authority = Authority::passive;
  t.prover = "physical";
  t.threshold = passive.threshold();
  for (const GameRound& a : active.rounds) {
    AudioScene modified = model;
    if (const auto* emit = std::get_if<sensing::EmitAcoustic>(&a.challenge.kind)) {
      modified = physical::with_source(std::move(modified), emit->series);
    }
    GameRound r;
    r.index = a.index;
    r.challenge = ControlAction{sensing::Wait{}};
    r.channel_seed = a.channel_seed;
    r.response = observe(Model{modified}, r.challenge, passive, r.channel_seed);
    r.prediction = predict(Model{modified}, r.challenge, passive);
    r.mismatch = sensing::mismatch(r.response, r.prediction);
    r.falsified = !(r.mismatch <= t.threshold);
    const bool stop = r.falsified;
    t.rounds.push_back(std::move(r));
    if (stop) {
      t.detection_round = a.index;
      break;
    }
  }
  return t;
}

bool same_observations(const GameTranscript& a, const GameTranscript& b) {
  if (a.rounds.size() != b.rounds.size()) return false;
  for (std::size_t i = 0; i < a.rounds.size(); ++i) {
    const auto& x = a.rounds[i].response;
    const auto& y = b.rounds[i].response;
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (std::bit_cast<std::uint64_t>(x[k]) != std::bit_cast<std::uint64_t>(y[k])) return false;
    }
  }
  return true;
}

DetectionSummary detection_statistics(const std::vector<GameTranscript>& transcripts) {
  require(!transcripts.empty(), "detection statistics need at least one transcript");
  DetectionSummary s;
  s.trials = transcripts.size();
  std::vector<double> taus;
  for (const GameTranscript& t : transcripts) {
    if (t.detection_round) taus.push_back(static_cast<double>(*t.detection_round));
    for (const GameRound& r : t.rounds) {
      if (s.per_round.size() < r.index) s.per_round.resize(r.index);
      RoundMismatch& m = s.per_round[r.index - 1];
      m.round = r.index;
      m.mean += r.mismatch;
      m.max = m.count == 0 ? r.mismatch : std::max(m.max, r.mismatch);
      ++m.count;
    }
  }
  for (RoundMismatch& m : s.per_round) {
    if (m.count > 0) m.mean /= static_cast<double>(m.count);
  }
  s.detected = taus.size();
  s.rate = static_cast<double>(s.detected) / static_cast<double>(s.trials);
  if (!taus.empty()) {
    std::sort(taus.begin(), taus.end());
    s.tau_median = quantile(taus, 0.5);
    s.tau_q10 = quantile(taus, 0.1);
    s.tau_q90 = quantile(taus, 0.9);
  }
  return s;
}

std::string DetectionSummary::to_json() const {
  return json{{"trials", trials},
              {"detected", detected},
              {"rate", rate},
              {"tau_median", optional_number(tau_median)},
              {"tau_q10", optional_number(tau_q10)},
              {"tau_q90", optional_number(tau_q90)}}
      .dump();
}

std::string DetectionSummary::per_round_csv() const {
  std::string out = "round,count,mean_mismatch,max_mismatch\n";
  char buf[96];
  for (const RoundMismatch& m : per_round) {
    std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g,%.17g\n", m.round, m.count, m.mean, m.max);
    out += buf;
  }
  return out;
}

std::string trials_csv(const std::vector<GameTranscript>& transcripts) {
  std::string out = "trial,seed,prover,detected,tau,rounds,max_mismatch\n";
  char buf[160];
  for (std::size_t i = 0; i < transcripts.size(); ++i) {
    const GameTranscript& t = transcripts[i];
    double worst = 0.0;
    for (const GameRound& r : t.rounds) worst = std::max(worst, r.mismatch);
    std::snprintf(buf, sizeof buf, "%zu,%llu,%s,%d,%s,%zu,%.17g\n", i, static_cast<unsigned long long>(t.seed),
                  t.prover.c_str(), t.detection_round ? 1 : 0,
                  t.detection_round ? std::to_string(*t.detection_round).c_str() : "", t.rounds.size(), worst);
    out += buf;
  }
  return out;
}

Scene2D random_scene(std::uint64_t seed, Vec2 center, std::size_t objects) {
  Rng rng = Rng(seed).split("random-scene");
  std::vector<physical::SceneObject> objs;
  for (std::size_t o = 0; o < objects; ++o) {
    physical::SceneObject obj;
    Vec2 p{center.x + rng.uniform(-1.5, 1.5), center.y + rng.uniform(-1.5, 1.5)};
    const std::size_t points = 2 + rng.below(3);
    double dir = rng.uniform(0.0, 2.0 * std::numbers::pi);
    for (std::size_t k = 0; k < points; ++k) {
      obj.points.push_back(p);
      const double len = rng.uniform(0.5, 1.5);
      dir += rng.uniform(-1.2, 1.2);
      p = {p.x + len * std::cos(dir), p.y + len * std::sin(dir)};
    }
    obj.albedo.clear();
    for (std::size_t s = 0; s + 1 < points; ++s) {
      std::vector<double> profile;
      const std::size_t pieces = 1 + rng.below(4);
      for (std::size_t k = 0; k < pieces; ++k) profile.push_back(rng.uniform(0.1, 0.95));
      obj.albedo.push_back(std::move(profile));
    }
    objs.push_back(std::move(obj));
  }
  return Scene2D(std::move(objs));
}

}  // namespace conceptlab::game
