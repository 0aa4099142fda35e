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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "rnktm/body_model.hpp"
#include "rnktm/bvh.hpp"

namespace rnktm {

struct PointCloudFrame {
  std::vector<Eigen::Vector3d> positions;
  std::vector<Eigen::Vector3d> normals;
  std::vector<std::uint64_t> point_ids;

  std::size_t size() const { return point_ids.size(); }
};

// Every frame carries the same point_id list in the same order.
struct PointCloudSequence {
  double frame_time = 0.0;
  std::vector<PointCloudFrame> frames;

  std::size_t frame_count() const { return frames.size(); }
  std::size_t point_count() const { return frames.empty() ? 0 : frames.front().size(); }
};

// Throws ValidationError if frames disagree on ids or normals are not unit.
void validate(const PointCloudSequence& seq);

// Rotation taking a Y-up mocap world to the Z-up world used by cameras.
PointCloudSequence y_up_to_z_up(const PointCloudSequence& seq);

// Centre (mean of all points over all frames) and radius (max distance from
// that centre) of the whole sequence.
struct BoundingSphere {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double radius = 0.0;
};
BoundingSphere bounding_sphere(const PointCloudSequence& seq);

void write_point_cloud_sequence(std::ostream& out, const PointCloudSequence& seq);
PointCloudSequence read_point_cloud_sequence(std::istream& in);
void save_point_cloud_sequence(const std::filesystem::path& path, const PointCloudSequence& seq);
PointCloudSequence load_point_cloud_sequence(const std::filesystem::path& path);

namespace mocap {

// Poses every sample by its bone's forward-kinematics frame. Normals are
// rotated only.
PointCloudSequence animate(const CapsuleBodyModel& model, const SkeletonRig& rig,
                           const MotionSequence& motion);

}  // namespace mocap
}  // namespace rnktm
