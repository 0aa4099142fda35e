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

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "rnktm/camera.hpp"
#include "rnktm/point_cloud.hpp"
#include "rnktm/visibility.hpp"

namespace rnktm::view {

// 2D point-cloud video seen from one camera.
struct ProjectedSequence {
  CameraPose camera;
  double frame_time = 0.0;
  std::vector<Projected2DFrame> frames;
};

struct RenderOptions {
  double hpr_gamma = 3.0;
};

// Cull, remove hidden points and project every frame for every camera.
// Output order follows `cameras`.
std::vector<ProjectedSequence> render_sequence(const PointCloudSequence& seq,
                                               const std::vector<CameraPose>& cameras,
                                               const RenderOptions& options = {});

ProjectedSequence render_view(const PointCloudSequence& seq, const CameraPose& camera,
                              const RenderOptions& options = {});

// Camera distance = radius_scale * bounding-sphere radius of the sequence,
// look-at = bounding-sphere centre.
ViewGrid fit_view_grid(const PointCloudSequence& seq, std::vector<double> azimuths,
                       std::vector<double> zeniths, double radius_scale = 3.0,
                       double focal_length = 1.0);

void write_projected_sequence(std::ostream& out, const ProjectedSequence& seq);
ProjectedSequence read_projected_sequence(std::istream& in);
void save_projected_sequence(const std::filesystem::path& path, const ProjectedSequence& seq);
ProjectedSequence load_projected_sequence(const std::filesystem::path& path);

}  // namespace rnktm::view
