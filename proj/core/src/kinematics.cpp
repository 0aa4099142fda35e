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

#include "rnktm/kinematics.hpp"

#include <numbers>

#include "rnktm/error.hpp"

namespace rnktm::mocap {

Eigen::Matrix3d joint_rotation(const Joint& joint, std::span<const double> values) {
  Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
  for (std::size_t i = 0; i < joint.channels.size(); ++i) {
    const double rad = values[i] * std::numbers::pi / 180.0;
    switch (joint.channels[i]) {
      case Channel::kXrotation: r = r * Eigen::AngleAxisd(rad, Eigen::Vector3d::UnitX()); break;
      case Channel::kYrotation: r = r * Eigen::AngleAxisd(rad, Eigen::Vector3d::UnitY()); break;
      case Channel::kZrotation: r = r * Eigen::AngleAxisd(rad, Eigen::Vector3d::UnitZ()); break;
      default: break;
    }
  }
  return r;
}

Transforms forward_kinematics(const SkeletonRig& rig, std::span<const double> frame) {
  if (frame.size() != rig.channel_count()) {
    throw ValidationError("frame has " + std::to_string(frame.size()) + " channels, rig expects " +
                          std::to_string(rig.channel_count()));
  }
  const auto& joints = rig.joints();
  Transforms world(joints.size());
  for (std::size_t j = 0; j < joints.size(); ++j) {
    const Joint& joint = joints[j];
    const auto values = frame.subspan(rig.channel_offset(j), joint.channels.size());
    Eigen::Vector3d translation = joint.offset;
    for (std::size_t i = 0; i < joint.channels.size(); ++i) {
      switch (joint.channels[i]) {
        case Channel::kXposition: translation.x() += values[i]; break;
        case Channel::kYposition: translation.y() += values[i]; break;
        case Channel::kZposition: translation.z() += values[i]; break;
        default: break;
      }
    }
    Eigen::Isometry3d local = Eigen::Isometry3d::Identity();
    local.linear() = joint_rotation(joint, values);
    local.translation() = translation;
    world[j] = joint.parent ? world[*joint.parent] * local : local;
  }
  return world;
}

std::vector<Eigen::Vector3d> joint_positions(const SkeletonRig& rig, std::span<const double> frame) {
  const auto world = forward_kinematics(rig, frame);
  std::vector<Eigen::Vector3d> out;
  out.reserve(world.size());
  for (const auto& t : world) out.push_back(t.translation());
  return out;
}

}  // namespace rnktm::mocap
