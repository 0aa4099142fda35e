// Copyright 2026 The rnktm Authors.
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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "rnktm/camera.hpp"
#include "rnktm/point_cloud.hpp"

namespace rnktm::view {

// One flag per point, aligned with the frame's point order.
class VisibilityMask {
 public:
  VisibilityMask() = default;
  explicit VisibilityMask(std::size_t n, bool value = false) : flags_(n, value ? 1 : 0) {}

  std::size_t size() const { return flags_.size(); }
  bool operator[](std::size_t i) const { return flags_[i] != 0; }
  void set(std::size_t i, bool v) { flags_[i] = v ? 1 : 0; }
  std::size_t count() const;
  // Indices with the flag set, ascending.
  std::vector<std::size_t> indices() const;

  friend bool operator==(const VisibilityMask&, const VisibilityMask&) = default;

 private:
  std::vector<std::uint8_t> flags_;
};

// Keeps point p with normal n iff n . (camera_position - p) > 0.
VisibilityMask backface_cull(const PointCloudFrame& frame, const CameraPose& camera);

// Spherical-flipping visibility: with p' = p - c and R = 10^gamma * max|p'|,
// each p' is mapped to p' + 2 (R - |p'|) p' / |p'|; points whose image is a
// vertex of the convex hull of the flipped set plus the camera are visible.
//
// Throws ValidationError for fewer than 4 points, gamma <= 0 or a camera
// inside the cloud's bounding sphere; NumericalError if the flipped set is
// degenerate.
VisibilityMask hidden_point_removal(std::span<const Eigen::Vector3d> positions,
                                    const Eigen::Vector3d& camera_position, double gamma);
VisibilityMask hidden_point_removal(std::span<const Eigen::Vector3d> positions,
                                    const CameraPose& camera, double gamma);

// Back-face culling followed by hidden point removal on the survivors.
VisibilityMask visible_points(const PointCloudFrame& frame, const CameraPose& camera, double gamma);

struct Projected2DFrame {
  std::vector<Eigen::Vector2d> points;
  std::vector<std::uint64_t> point_ids;
  // Retained points that were on or behind the image plane and were skipped.
  std::size_t dropped_behind = 0;

  std::size_t size() const { return point_ids.size(); }
};

// Pinhole projection (f * x_c / z_c, f * y_c / z_c) of the masked points in
// the camera frame of `camera`.
Projected2DFrame project_perspective(const PointCloudFrame& frame, const VisibilityMask& mask,
                                     const CameraPose& camera);

}  // namespace rnktm::view
