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

#include "physical/visual.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"
#include "util/error.hpp"
#include "util/rng.hpp"

namespace conceptlab::physical {

namespace {

using nlohmann::json;

double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
Vec2 sub(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }

bool unit_interval(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

}  // namespace

double Segment::albedo_at(double t) const {
  for (auto it = markers.rbegin(); it != markers.rend(); ++it) {
    if (t >= it->t0 && t <= it->t1) return it->albedo;
  }
  const auto n = albedo.size();
  const auto piece = std::min(n - 1, static_cast<std::size_t>(std::max(t, 0.0) * static_cast<double>(n)));
  return albedo[piece];
}

double Segment::length() const { return std::hypot(b.x - a.x, b.y - a.y); }

Scene2D::Scene2D(std::vector<SceneObject> objects) : objects_(std::move(objects)) {
  for (std::size_t o = 0; o < objects_.size(); ++o) {
    const SceneObject& obj = objects_[o];
    const std::string where = "object " + std::to_string(o);
    require(obj.points.size() >= 2, where + ": needs at least two points");
    const std::size_t count = obj.points.size() - 1;
    require(obj.albedo.size() == 1 || obj.albedo.size() == count,
            where + ": albedo needs one profile or one per segment");
    const std::size_t first = segments_.size();
    for (std::size_t s = 0; s < count; ++s) {
      Segment seg;
      seg.a = obj.points[s];
      seg.b = obj.points[s + 1];
      seg.albedo = obj.albedo.size() == 1 ? obj.albedo[0] : obj.albedo[s];
      require(std::isfinite(seg.a.x) && std::isfinite(seg.a.y) && std::isfinite(seg.b.x) &&
                  std::isfinite(seg.b.y),
              where + ": non-finite coordinate");
      require(seg.length() > 0.0, where + ": degenerate segment " + std::to_string(s));
      require(!seg.albedo.empty(), where + ": empty albedo profile");
      for (double v : seg.albedo) require(unit_interval(v), where + ": albedo outside [0, 1]");
      segments_.push_back(std::move(seg));
    }
    for (const auto& m : obj.markers) {
      require(m.segment < count, where + ": marker on missing segment");
      require(unit_interval(m.marker.t0) && unit_interval(m.marker.t1) && m.marker.t0 <= m.marker.t1,
              where + ": marker interval outside [0, 1]");
      require(unit_interval(m.marker.albedo), where + ": marker albedo outside [0, 1]");
      segments_[first + m.segment].markers.push_back(m.marker);
    }
  }
}

std::string Scene2D::to_json() const {
  json objs = json::array();
  for (const SceneObject& obj : objects_) {
    json o;
    o["points"] = json::array();
    for (Vec2 p : obj.points) o["points"].push_back({p.x, p.y});
    o["albedo"] = obj.albedo;
    o["markers"] = json::array();
    for (const auto& m : obj.markers) {
      o["markers"].push_back(
          {{"segment", m.segment}, {"t0", m.marker.t0}, {"t1", m.marker.t1}, {"albedo", m.marker.albedo}});
    }
    objs.push_back(std::move(o));
  }
  return json{{"objects", objs}}.dump();
}

Scene2D Scene2D::from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    std::vector<SceneObject> objects;
    for (const json& o : doc.at("objects")) {
      SceneObject obj;
      for (const json& p : o.at("points")) obj.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
      if (o.contains("albedo")) {
        const json& a = o["albedo"];
        if (a.is_number()) {
          obj.albedo = {{a.get<double>()}};
        } else {
          obj.albedo.clear();
          for (const json& profile : a) {
            obj.albedo.push_back(profile.is_number() ? std::vector<double>{profile.get<double>()}
                                                     : profile.get<std::vector<double>>());
          }
        }
      }
      if (o.contains("markers")) {
        for (const json& m : o["markers"]) {
          obj.markers.push_back({m.value("segment", std::size_t{0}),
                                 {m.at("t0").get<double>(), m.at("t1").get<double>(), m.at("albedo").get<double>()}});
        }
      }
      objects.push_back(std::move(obj));
    }
    return Scene2D(std::move(objects));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::config, std::string("scene: ") + e.what());
  }
}

void Pose::validate() const {
  require(std::isfinite(position.x) && std::isfinite(position.y) && std::isfinite(heading),
          "pose: non-finite position or heading");
  require(fov > 0.0 && fov < std::numbers::pi, "pose: field of view must lie in (0, pi)");
  require(pixels >= 1, "pose: at least one pixel");
}

Vec2 Pose::ray(std::size_t i) const {
  const double half = std::tan(0.5 * fov);
  const double s = half * (1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(pixels));
  // Forward plus s times the left-hand normal, normalized.
  const double c = std::cos(heading);
  const double n = std::sin(heading);
  const double dx = c - s * n;
  const double dy = n + s * c;
  const double len = std::hypot(dx, dy);
  return {dx / len, dy / len};
}

void RenderOptions::validate() const {
  require(gain > 0.0 && std::isfinite(gain), "render: gain must be positive");
  require(gamma > 0.0 && std::isfinite(gamma), "render: gamma must be positive");
  require(noise_sigma >= 0.0 && std::isfinite(noise_sigma), "render: noise sigma must be >= 0");
  require(levels >= 2, "render: at least two quantization levels");
}

std::optional<RayHit> cast(const Scene2D& scene, Vec2 origin, Vec2 dir) {
  std::optional<RayHit> best;
  const auto& segs = scene.segments();
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const Vec2 e = sub(segs[k].b, segs[k].a);
    const double denom = cross(dir, e);
    if (denom == 0.0) continue;  // parallel; grazing hits have zero measure
    const Vec2 w = sub(segs[k].a, origin);
    const double s = cross(w, e) / denom;
    const double t = cross(w, dir) / denom;
    if (s <= 0.0 || t < 0.0 || t > 1.0) continue;
    if (!best || s < best->distance) best = RayHit{k, s, t};
  }
  return best;
}

double contrast(double albedo, const RenderOptions& options) {
  return options.gain * std::pow(albedo, options.gamma);
}

int quantize(double value, int levels) {
  const double scaled = std::round(value * static_cast<double>(levels - 1));
  if (!(scaled > 0.0)) return 0;
  if (scaled >= static_cast<double>(levels - 1)) return levels - 1;
  return static_cast<int>(scaled);
}

std::vector<double> predict(const Scene2D& scene, const Pose& pose, const RenderOptions& options) {
  pose.validate();
  options.validate();
  std::vector<double> values(pose.pixels, 0.0);
  for (std::size_t i = 0; i < pose.pixels; ++i) {
    if (auto hit = cast(scene, pose.position, pose.ray(i))) {
      values[i] = contrast(scene.segments()[hit->segment].albedo_at(hit->t), options);
    }
  }
  return values;
}

Image1D render(const Scene2D& scene, const Pose& pose, const RenderOptions& options) {
  Image1D image;
  image.values = predict(scene, pose, options);
  if (options.noise_sigma > 0.0) {
    Rng rng(options.seed);
    for (double& v : image.values) v += options.noise_sigma * rng.normal();
  }
  image.levels.reserve(image.values.size());
  for (double v : image.values) image.levels.push_back(quantize(v, options.levels));
  return image;
}

std::string image_to_csv(const Image1D& image) {
  std::string out = "pixel,level,value\n";
  char buf[64];
  for (std::size_t i = 0; i < image.levels.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%d,%.17g\n", i, image.levels[i], image.values[i]);
    out += buf;
  }
  return out;
}

}  // namespace conceptlab::physical
