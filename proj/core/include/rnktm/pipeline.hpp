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

#include "rnktm/body_model.hpp"
#include "rnktm/bvh.hpp"
#include "rnktm/point_cloud.hpp"
#include "rnktm/procedural_motion.hpp"
#include "rnktm/render.hpp"
#include "rnktm/trajectories.hpp"

namespace rnktm::pipeline {

// Capsule body driven by a mocap clip, converted to the Z-up camera world.
PointCloudSequence synthesize(const mocap::SkeletonRig& rig, const mocap::MotionSequence& motion,
                              const mocap::BodyShape& shape, double density, std::uint64_t seed);

struct ViewSettings {
  std::vector<double> azimuths;
  std::vector<double> zeniths;
  double radius_scale = 3.0;
  double focal_length = 1.0;
  double hpr_gamma = 3.0;
};

// Cameras fitted to the sequence's bounding sphere, azimuth-major.
std::vector<view::ProjectedSequence> render_views(const PointCloudSequence& seq, const ViewSettings& views);

// One descriptor matrix (2L x N) per projected view.
std::vector<Eigen::MatrixXd> view_descriptors(std::span<const view::ProjectedSequence> views,
                                              const traj::LinkOptions& options);

// Seeded uniform sample of at most `max_columns` columns drawn from all
// inputs together (all columns if there are fewer).
Eigen::MatrixXd pool_descriptors(std::span<const Eigen::MatrixXd> parts, std::size_t max_columns,
                                 std::uint64_t seed);

// A procedurally generated performance.
struct SyntheticClip {
  mocap::MotionFamily family = mocap::MotionFamily::kWalk;
  mocap::MotionStyle style;
  double height_scale = 1.0;
  std::uint64_t body_seed = 0;
  double body_jitter = 0.0;
  std::size_t frames = 60;
};

PointCloudSequence synthesize_clip(const SyntheticClip& clip, double density);

}  // namespace rnktm::pipeline
