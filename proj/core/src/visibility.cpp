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

#include "rnktm/visibility.hpp"

#include <cmath>

#include "rnktm/convex_hull.hpp"
#include "rnktm/error.hpp"

namespace rnktm::view {

std::size_t VisibilityMask::count() const {
  std::size_t n = 0;
  for (auto f : flags_) n += f;
  return n;
}

std::vector<std::size_t> VisibilityMask::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < flags_.size(); ++i) {
    if (flags_[i]) out.push_back(i);
  }
  return out;
}

VisibilityMask backface_cull(const PointCloudFrame& frame, const CameraPose& camera) {
  const Eigen::Vector3d c = camera.position();
  VisibilityMask mask(frame.size());
  for (std::size_t i = 0; i < frame.size(); ++i) {
    mask.set(i, frame.normals[i].dot(c - frame.positions[i]) > 0.0);
  }
  return mask;
}

VisibilityMask hidden_point_removal(std::span<const Eigen::Vector3d> positions,
                                    const Eigen::Vector3d& camera_position, double gamma) {
  if (positions.size() < 4) {
    throw ValidationError("hidden point removal needs at least 4 points, got " +
                          std::to_string(positions.size()));
  }
  if (!(gamma > 0.0)) throw ValidationError("hidden point removal gamma must be positive");

  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (const auto& p : positions) centroid += p;
  centroid /= static_cast<double>(positions.size());
  double cloud_radius = 0.0;
  for (const auto& p : positions) cloud_radius = std::max(cloud_radius, (p - centroid).norm());
  if ((camera_position - centroid).norm() <= cloud_radius) {
    throw ValidationError("camera lies inside the point cloud's bounding sphere");
  }

  const std::size_t n = positions.size();
  std::vector<Eigen::Vector3d> rel(n);
  std::vector<double> norms(n);
  double max_norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    rel[i] = positions[i] - camera_position;
    norms[i] = rel[i].norm();
    max_norm = std::max(max_norm, norms[i]);
  }
  const double flip_radius = std::pow(10.0, gamma) * max_norm;

  std::vector<Eigen::Vector3d> flipped(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    flipped[i] = rel[i] + 2.0 * (flip_radius - norms[i]) * rel[i] / norms[i];
  }
  flipped[n] = Eigen::Vector3d::Zero();  // the viewpoint itself

  const auto hull = geometry::convex_hull_3d(flipped);
  VisibilityMask mask(n);
  for (std::size_t v : hull.vertices) {
    if (v < n) mask.set(v, true);
  }
  return mask;
}

VisibilityMask hidden_point_removal(std::span<const Eigen::Vector3d> positions,
                                    const CameraPose& camera, double gamma) {
  return hidden_point_removal(positions, camera.position(), gamma);
}

VisibilityMask visible_points(const PointCloudFrame& frame, const CameraPose& camera, double gamma) {
  const VisibilityMask front = backface_cull(frame, camera);
  const auto kept = front.indices();
  std::vector<Eigen::Vector3d> subset;
  subset.reserve(kept.size());
  for (auto i : kept) subset.push_back(frame.positions[i]);
  const VisibilityMask hpr = hidden_point_removal(subset, camera, gamma);
  VisibilityMask mask(frame.size());
  for (std::size_t k = 0; k < kept.size(); ++k) {
    if (hpr[k]) mask.set(kept[k], true);
  }
  return mask;
}

Projected2DFrame project_perspective(const PointCloudFrame& frame, const VisibilityMask& mask,
                                     const CameraPose& camera) {
  if (mask.size() != frame.size()) throw ValidationError("visibility mask does not match frame");
  const CameraFrame cf = camera.frame();
  Projected2DFrame out;
  for (std::size_t i = 0; i < frame.size(); ++i) {
    if (!mask[i]) continue;
    const Eigen::Vector3d pc = cf.to_camera(frame.positions[i]);
    if (!(pc.z() > 0.0)) {
      ++out.dropped_behind;
      continue;
    }
    out.points.emplace_back(camera.focal_length * pc.x() / pc.z(),
                            camera.focal_length * pc.y() / pc.z());
    out.point_ids.push_back(frame.point_ids[i]);
  }
  return out;
}

}  // namespace rnktm::view
