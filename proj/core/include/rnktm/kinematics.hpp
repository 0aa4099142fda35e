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

#include <span>
#include <vector>

#include <Eigen/Geometry>

#include "rnktm/bvh.hpp"

namespace rnktm::mocap {

using Transforms = std::vector<Eigen::Isometry3d>;

// Rotation for one joint, composed in the declared channel order: for
// "Zrotation Xrotation Yrotation" the result is Rz * Rx * Ry.
Eigen::Matrix3d joint_rotation(const Joint& joint, std::span<const double> values);

// World transform of every joint for one frame. A joint's local transform is
// translate(offset + translation channels) * rotation.
Transforms forward_kinematics(const SkeletonRig& rig, std::span<const double> frame);

// Joint origins in world space; convenience wrapper over forward_kinematics.
std::vector<Eigen::Vector3d> joint_positions(const SkeletonRig& rig, std::span<const double> frame);

}  // namespace rnktm::mocap
