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

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

// Sub-interval [t0, t1] of a segment (in its own 0..1 parameter) painted with
// a distinguishing albedo.
struct Marker {
  double t0 = 0.0;
  double t1 = 1.0;
  double albedo = 0.0;

  friend bool operator==(const Marker&, const Marker&) = default;
};

struct Segment {
  Vec2 a;
  Vec2 b;
  // Piecewise-constant albedo: pieces of equal length along a -> b.
  std::vector<double> albedo{0.5};
  std::vector<Marker> markers;

  double albedo_at(double t) const;
  double length() const;

  friend bool operator==(const Segment&, const Segment&) = default;
};

// A chain of segments through `points`.
struct SceneObject {
  std::vector<Vec2> points;
  // One albedo profile per segment; a single profile is shared by all.
  std::vector<std::vector<double>> albedo{{0.5}};
  struct SegmentMarker {
    std::size_t segment = 0;
    Marker marker;
    friend bool operator==(const SegmentMarker&, const SegmentMarker&) = default;
  };
  std::vector<SegmentMarker> markers;

  friend bool operator==(const SceneObject&, const SceneObject&) = default;
};

class Scene2D {
 public:
  Scene2D() = default;
  // Validates: positive-length segments, albedo in [0, 1], marker intervals
  // inside [0, 1].
  explicit Scene2D(std::vector<SceneObject> objects);

  const std::vector<SceneObject>& objects() const noexcept { return objects_; }
  // Flattened segments in object order.
  const std::vector<Segment>& segments() const noexcept { return segments_; }

  std::string to_json() const;
  static Scene2D from_json(std::string_view text);

  friend bool operator==(const Scene2D& l, const Scene2D& r) { return l.objects_ == r.objects_; }

 private:
  std::vector<SceneObject> objects_;
  std::vector<Segment> segments_;
};

struct Pose {
  Vec2 position;
  double heading = 0.0;  // radians
  double fov = 1.0;      // radians, in (0, pi)
  std::size_t pixels = 64;

  void validate() const;
  // Unit direction of the central ray of pixel i (pinhole projection,
  // pixel 0 on the left when looking along the heading).
  Vec2 ray(std::size_t i) const;

  friend bool operator==(const Pose&, const Pose&) = default;
};

struct RenderOptions {
  double gain = 1.0;
  double gamma = 1.0;
  double noise_sigma = 0.0;
  int levels = 256;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Image1D {
  std::vector<int> levels;
  // Value before quantization (contrast applied, noise added).
  std::vector<double> values;
};

struct RayHit {
  std::size_t segment = 0;
  double distance = 0.0;
  double t = 0.0;  // parameter along the segment
};

// Nearest intersection of the ray origin + s*dir (s > 0) with any segment.
// Ties go to the lowest segment index.
std::optional<RayHit> cast(const Scene2D& scene, Vec2 origin, Vec2 dir);

double contrast(double albedo, const RenderOptions& options);
int quantize(double value, int levels);

Image1D render(const Scene2D& scene, const Pose& pose, const RenderOptions& options);
// Noiseless pre-quantization values: what a model predicts for the pose.
std::vector<double> predict(const Scene2D& scene, const Pose& pose, const RenderOptions& options);

std::string image_to_csv(const Image1D& image);

}  // namespace conceptlab::physical
