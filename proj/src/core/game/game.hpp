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
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "physical/audio.hpp"
#include "physical/visual.hpp"
#include "sensing/sensing.hpp"

namespace conceptlab::game {

using physical::AudioScene;
using physical::FourierSeries;
using physical::Pose;
using physical::Scene2D;
using physical::Vec2;
using sensing::ControlAction;

enum class Modality { visual, acoustic };
enum class Authority { passive, active };
enum class ChallengePolicy { fixed, scripted, planner, random_novel };

struct NovelPoseRange {
  Vec2 center;
  double radius_lo = 3.0;
  double radius_hi = 5.0;
  double heading_jitter = 0.1;
};

struct NovelToneRange {
  double fundamental_lo = 20.0;
  double fundamental_hi = 60.0;
  std::size_t harmonics = 3;
  double amplitude_max = 1.0;
};

struct VerifierConfig {
  Modality modality = Modality::visual;
  Authority authority = Authority::active;
  ChallengePolicy policy = ChallengePolicy::random_novel;
  std::size_t max_rounds = 200;
  std::size_t frames = 1;        // observations averaged per response
  double noise_sigma = 0.0;      // channel noise, sets the mismatch threshold
  physical::RenderOptions render;  // contrast and quantization; noise/seed ignored
  std::vector<Pose> poses;       // fixed (first) or scripted (cycled) poses; planner candidates
  std::vector<Scene2D> alternatives;  // planner: rival scene models to split
  NovelPoseRange novel_pose;
  NovelToneRange novel_tone;
  double fov = 1.0;
  std::size_t pixels = 64;

  // Passive verifiers may only use fixed or scripted challenges; acoustic
  // verifiers use fixed (silence) or random_novel tones.
  void validate() const;
  double threshold() const;
};

struct PhysicalProver {
  std::variant<Scene2D, AudioScene> scene;
};
// Answers with the genuine response to an already issued challenge; any new
// challenge gets a copy of the most recent response it holds. Learns the
// genuine response to each challenge one round late.
struct ReplayLagSpoofer {
  Scene2D target;
  std::vector<Pose> preseed;  // poses observed before the game
};
struct PerfectModelSpoofer {
  std::variant<Scene2D, AudioScene> model;
};
// Knows S0 and plays one additive source: answers challenge u with the
// passive efflux of S0 + u.
struct AcousticAdditiveSpoofer {
  AudioScene base;
};
using ProverKind = std::variant<PhysicalProver, ReplayLagSpoofer, PerfectModelSpoofer, AcousticAdditiveSpoofer>;

std::string_view prover_name(const ProverKind& prover);
Modality parse_modality(std::string_view name);
Authority parse_authority(std::string_view name);
ChallengePolicy parse_policy(std::string_view name);
std::string_view modality_name(Modality m);
std::string_view authority_name(Authority a);
std::string_view policy_name(ChallengePolicy p);

struct GameRound {
  std::size_t index = 0;  // 1-based
  ControlAction challenge;
  std::uint64_t channel_seed = 0;
  std::vector<double> response;
  std::vector<double> prediction;
  double mismatch = 0.0;
  bool falsified = false;  // verdict after this round
};

struct GameTranscript {
  std::uint64_t seed = 0;
  Modality modality = Modality::visual;
  Authority authority = Authority::active;
  std::string prover;
  double threshold = 0.0;
  std::vector<GameRound> rounds;
  std::optional<std::size_t> detection_round;

  // Header line, then one line per round with hex FNV-1a hashes of the
  // response and prediction vectors.
  std::string to_jsonl() const;
};

std::string vector_hash(const std::vector<double>& v);

// `model` is the verifier's physical model; its kind must match the modality.
GameTranscript run_game(const VerifierConfig& verifier, const ProverKind& prover,
                        const std::variant<Scene2D, AudioScene>& model, std::uint64_t seed);

// Null arm: the genuine article (or a rival physical scene) as prover.
GameTranscript verify_physical_vs_physical(const VerifierConfig& verifier,
                                           const std::variant<Scene2D, AudioScene>& model,
                                           const std::variant<Scene2D, AudioScene>& prover_scene,
                                           std::uint64_t seed);

// Replays an active acoustic transcript as a passive one: each round observes
// the modified scene model + u_t with no emission, under the same channel seed.
GameTranscript acoustic_passive_replay(const GameTranscript& active, const VerifierConfig& verifier,
                                       const AudioScene& model);
// Observation-for-observation bit equality of responses.
bool same_observations(const GameTranscript& a, const GameTranscript& b);

struct RoundMismatch {
  std::size_t round = 0;
  std::size_t count = 0;
  double mean = 0.0;
  double max = 0.0;
};

struct DetectionSummary {
  std::size_t trials = 0;
  std::size_t detected = 0;
  double rate = 0.0;
  std::optional<double> tau_median;
  std::optional<double> tau_q10;
  std::optional<double> tau_q90;
  std::vector<RoundMismatch> per_round;

  std::string to_json() const;
  std::string per_round_csv() const;
};

DetectionSummary detection_statistics(const std::vector<GameTranscript>& transcripts);
std::string trials_csv(const std::vector<GameTranscript>& transcripts);

// Scene of a few random albedo-textured segment chains around `center`.
Scene2D random_scene(std::uint64_t seed, Vec2 center = {0.0, 0.0}, std::size_t objects = 3);

}  // namespace conceptlab::game
