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

#include "rnktm/pipeline.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "rnktm/error.hpp"

namespace rnktm::pipeline {

PointCloudSequence synthesize(const mocap::SkeletonRig& rig, const mocap::MotionSequence& motion,
                              const mocap::BodyShape& shape, double density, std::uint64_t seed) {
  const auto body = mocap::build_body_model(rig, shape, density, seed);
  return y_up_to_z_up(mocap::animate(body, rig, motion));
}

std::vector<view::ProjectedSequence> render_views(const PointCloudSequence& seq, const ViewSettings& views) {
  const auto grid = view::fit_view_grid(seq, views.azimuths, views.zeniths, views.radius_scale, views.focal_length);
  return view::render_sequence(seq, view::generate_view_grid(grid), view::RenderOptions{views.hpr_gamma});
}

std::vector<Eigen::MatrixXd> view_descriptors(std::span<const view::ProjectedSequence> views,
                                              const traj::LinkOptions& options) {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(views.size());
  for (const auto& v : views) out.push_back(traj::extract_descriptors(v.frames, options));
  return out;
}

Eigen::MatrixXd pool_descriptors(std::span<const Eigen::MatrixXd> parts, std::size_t max_columns,
                                 std::uint64_t seed) {
  if (parts.empty()) throw ValidationError("no descriptors to pool");
  const auto rows = parts.front().rows();
  std::vector<std::pair<std::size_t, Eigen::Index>> refs;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    if (parts[p].cols() > 0 && parts[p].rows() != rows) throw ValidationError("descriptor dimensions differ");
    for (Eigen::Index c = 0; c < parts[p].cols(); ++c) refs.emplace_back(p, c);
  }
  if (refs.size() > max_columns) {
    std::mt19937_64 rng(seed);
    std::shuffle(refs.begin(), refs.end(), rng);
    refs.resize(max_columns);
    std::sort(refs.begin(), refs.end());
  }
  Eigen::MatrixXd out(rows, static_cast<Eigen::Index>(refs.size()));
  for (std::size_t i = 0; i < refs.size(); ++i) {
    out.col(static_cast<Eigen::Index>(i)) = parts[refs[i].first].col(refs[i].second);
  }
  return out;
}

PointCloudSequence synthesize_clip(const SyntheticClip& clip, double density) {
  const auto rig = mocap::humanoid_rig(clip.height_scale);
  const auto motion = mocap::generate_motion(rig, clip.family, clip.style, clip.frames);
  const auto shape = mocap::humanoid_body_shape(clip.body_seed, clip.body_jitter);
  return synthesize(rig, motion, shape, density, clip.body_seed);
}

}  // namespace rnktm::pipeline
