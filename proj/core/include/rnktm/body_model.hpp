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
#include <vector>

#include <Eigen/Core>

#include "rnktm/bvh.hpp"

namespace rnktm::mocap {

// Bone-attached surface point. `bone` is the joint whose frame the point
// rides with; position and normal are expressed in that frame.
struct SurfaceSample {
  std::uint64_t point_id = 0;
  std::size_t bone = 0;
  Eigen::Vector3d local_position = Eigen::Vector3d::Zero();
  Eigen::Vector3d local_normal = Eigen::Vector3d::UnitZ();
};

// Capsule around the link from `start` to `end`, both in the bone's frame.
struct CapsuleSegment {
  std::size_t bone = 0;
  Eigen::Vector3d start = Eigen::Vector3d::Zero();
  Eigen::Vector3d end = Eigen::Vector3d::Zero();
  double radius = 0.0;
  double density = 0.0;

  double length() const { return (end - start).norm(); }
  // Closed-form capsule area 2*pi*r*(2r + length).
  double surface_area() const;
};

// Radius of the capsule on each link is
//   max(min_radius, radius_fraction * link_length) * radius_scale[bone].
// An empty radius_scale means 1 for every bone.
struct BodyShape {
  double radius_fraction = 0.12;
  double min_radius = 0.0;
  std::vector<double> radius_scale;
};

struct CapsuleBodyModel {
  std::size_t joint_count = 0;
  std::vector<CapsuleSegment> segments;
  std::vector<SurfaceSample> samples;
};

// One capsule per parent->child link and per end site. Sample count per
// capsule is round(density * area); positions are uniform over the surface.
// Deterministic for a given seed.
CapsuleBodyModel build_body_model(const SkeletonRig& rig, const BodyShape& shape, double density,
                                  std::uint64_t seed);

// Samples a single capsule; exposed for tests and custom bodies.
std::vector<SurfaceSample> sample_capsule(const CapsuleSegment& segment, std::uint64_t first_id,
                                          std::uint64_t seed);

}  // namespace rnktm::mocap
