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
#include <vector>

namespace conceptlab::physical {

struct Harmonic {
  double amplitude = 0.0;
  double phase = 0.0;  // radians

  friend bool operator==(const Harmonic&, const Harmonic&) = default;
};

// S(t) = sum_h amplitude_h * sin(2 pi (h+1) f0 (t - delay) + phase_h).
struct FourierSeries {
  double fundamental_hz = 1.0;
  double delay_s = 0.0;
  std::vector<Harmonic> harmonics;

  double operator()(double t) const;
  // Highest represented frequency.
  double bandwidth_hz() const;

  friend bool operator==(const FourierSeries&, const FourierSeries&) = default;
};

struct TimeWarp {
  double a = 1.0;
  double b = 0.0;

  friend bool operator==(const TimeWarp&, const TimeWarp&) = default;
};

struct AudioScene {
  std::vector<FourierSeries> sources;
  double gain = 1.0;
  TimeWarp warp;
  double sample_rate = 1000.0;
  std::size_t window = 1000;
  double noise_sigma = 0.0;

  // Rejects non-positive gain/warp/rate, and any source whose warped
  // bandwidth reaches the Nyquist rate (Error bandwidth).
  void validate() const;
  void check_bandwidth(const FourierSeries& source) const;

  std::string to_json() const;
  static AudioScene from_json(std::string_view text);

  friend bool operator==(const AudioScene&, const AudioScene&) = default;
};

// x[i] = gain * sum_k S_k(a * i / fs + b) + n_i, summed in source order with
// the active source (if any) last. Noise is N(0, sigma^2) from `seed`.
std::vector<double> mix(const AudioScene& scene, const std::optional<FourierSeries>& active,
                        std::uint64_t seed);

// The scene with `active` appended as an ordinary source.
AudioScene with_source(AudioScene scene, const FourierSeries& active);

std::string series_to_json(const FourierSeries& series);
FourierSeries series_from_json(std::string_view text);

std::string samples_to_csv(const std::vector<double>& samples);
// Little-endian IEEE-754 doubles.
std::string samples_to_binary(const std::vector<double>& samples);

}  // namespace conceptlab::physical
