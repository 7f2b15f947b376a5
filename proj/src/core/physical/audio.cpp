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

#include "physical/audio.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <numbers>

#include "json.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"

namespace conceptlab::physical {

namespace {

using nlohmann::json;

json series_json(const FourierSeries& s) {
  json h = json::array();
  for (const Harmonic& x : s.harmonics) h.push_back({{"amplitude", x.amplitude}, {"phase", x.phase}});
  return {{"fundamental_hz", s.fundamental_hz}, {"delay_s", s.delay_s}, {"harmonics", h}};
}

FourierSeries series_parse(const json& j) {
  FourierSeries s;
  s.fundamental_hz = j.at("fundamental_hz").get<double>();
  s.delay_s = j.value("delay_s", 0.0);
  for (const json& h : j.at("harmonics")) {
    s.harmonics.push_back({h.at("amplitude").get<double>(), h.value("phase", 0.0)});
  }
  return s;
}

}  // namespace

double FourierSeries::operator()(double t) const {
  const double base = 2.0 * std::numbers::pi * fundamental_hz * (t - delay_s);
  double sum = 0.0;
  for (std::size_t h = 0; h < harmonics.size(); ++h) {
    sum += harmonics[h].amplitude * std::sin(static_cast<double>(h + 1) * base + harmonics[h].phase);
  }
  return sum;
}

double FourierSeries::bandwidth_hz() const {
  for (std::size_t h = harmonics.size(); h > 0; --h) {
    if (harmonics[h - 1].amplitude != 0.0) return static_cast<double>(h) * fundamental_hz;
  }
  return 0.0;
}

void AudioScene::check_bandwidth(const FourierSeries& source) const {
  require(std::isfinite(source.fundamental_hz) && source.fundamental_hz > 0.0,
          "audio: fundamental must be positive");
  require(std::isfinite(source.delay_s), "audio: non-finite delay");
  for (const Harmonic& h : source.harmonics) {
    require(std::isfinite(h.amplitude) && std::isfinite(h.phase), "audio: non-finite harmonic");
  }
  if (warp.a * source.bandwidth_hz() >= 0.5 * sample_rate) {
    throw Error(ErrorCode::bandwidth, "audio: source bandwidth " + std::to_string(source.bandwidth_hz()) +
                                          " Hz reaches the Nyquist rate");
  }
}

void AudioScene::validate() const {
  require(gain > 0.0 && std::isfinite(gain), "audio: gain must be positive");
  require(warp.a > 0.0 && std::isfinite(warp.a) && std::isfinite(warp.b), "audio: warp slope must be positive");
  require(sample_rate > 0.0 && std::isfinite(sample_rate), "audio: sample rate must be positive");
  require(noise_sigma >= 0.0 && std::isfinite(noise_sigma), "audio: noise sigma must be >= 0");
  for (const FourierSeries& s : sources) check_bandwidth(s);
}

std::vector<double> mix(const AudioScene& scene, const std::optional<FourierSeries>& active,
                        std::uint64_t seed) {
  scene.validate();
  if (active) scene.check_bandwidth(*active);
  std::vector<double> x(scene.window);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = scene.warp.a * static_cast<double>(i) / scene.sample_rate + scene.warp.b;
    double sum = 0.0;
    for (const FourierSeries& s : scene.sources) sum += s(t);
    if (active) sum += (*active)(t);
    x[i] = scene.gain * sum;
  }
  if (scene.noise_sigma > 0.0) {
    Rng rng(seed);
    for (double& v : x) v += scene.noise_sigma * rng.normal();
  }
  return x;
}

AudioScene with_source(AudioScene scene, const FourierSeries& active) {
  scene.sources.push_back(active);
  return scene;
}

std::string AudioScene::to_json() const {
  json src = json::array();
  for (const FourierSeries& s : sources) src.push_back(series_json(s));
  return json{{"sources", src},
              {"gain", gain},
              {"warp", {{"a", warp.a}, {"b", warp.b}}},
              {"sample_rate", sample_rate},
              {"window", window},
              {"noise_sigma", noise_sigma}}
      .dump();
}

AudioScene AudioScene::from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    AudioScene scene;
    for (const json& s : doc.at("sources")) scene.sources.push_back(series_parse(s));
    scene.gain = doc.value("gain", 1.0);
    if (doc.contains("warp")) scene.warp = {doc["warp"].value("a", 1.0), doc["warp"].value("b", 0.0)};
    scene.sample_rate = doc.value("sample_rate", 1000.0);
    scene.window = doc.value("window", std::size_t{1000});
    scene.noise_sigma = doc.value("noise_sigma", 0.0);
    scene.validate();
    return scene;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::config, std::string("audio scene: ") + e.what());
  }
}

std::string series_to_json(const FourierSeries& series) { return series_json(series).dump(); }

FourierSeries series_from_json(std::string_view text) {
  try {
    return series_parse(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::config, std::string("fourier series: ") + e.what());
  }
}

std::string samples_to_csv(const std::vector<double>& samples) {
  std::string out = "i,x\n";
  char buf[48];
  for (std::size_t i = 0; i < samples.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, samples[i]);
    out += buf;
  }
  return out;
}

std::string samples_to_binary(const std::vector<double>& samples) {
  std::string out(samples.size() * 8, '\0');
  for (std::size_t i = 0; i < samples.size(); ++i) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(samples[i]);
    for (int b = 0; b < 8; ++b) out[i * 8 + b] = static_cast<char>((bits >> (8 * b)) & 0xff);
  }
  return out;
}

}  // namespace conceptlab::physical
