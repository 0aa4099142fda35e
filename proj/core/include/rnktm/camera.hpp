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

#include <vector>

#include <Eigen/Core>

namespace rnktm::view {

// Orthonormal camera axes. `to_camera` maps a world point to (right, up,
// depth) coordinates; depth is positive in front of the camera.
struct CameraFrame {
  Eigen::Vector3d origin = Eigen::Vector3d::Zero();
  Eigen::Vector3d right = Eigen::Vector3d::UnitX();
  Eigen::Vector3d up = Eigen::Vector3d::UnitY();
  Eigen::Vector3d forward = Eigen::Vector3d::UnitZ();

  Eigen::Vector3d to_camera(const Eigen::Vector3d& world) const {
    const Eigen::Vector3d d = world - origin;
    return {d.dot(right), d.dot(up), d.dot(forward)};
  }
};

// Camera on a sphere of `radius` around `look_at`, world Z up.
//
//   position = look_at + radius * (sin(zen) cos(az), sin(zen) sin(az), cos(zen))
//
// The camera looks at `look_at`. Its up axis is -e_zenith, the direction of
// decreasing zenith angle on the sphere; at zenith 0 this is the limit
// (-cos(az), -sin(az), 0), so overhead cameras differ only by an in-plane
// rotation instead of hitting the usual world-up singularity.
struct CameraPose {
  double azimuth_deg = 0.0;
  double zenith_deg = 90.0;
  double radius = 1.0;
  double focal_length = 1.0;
  Eigen::Vector3d look_at = Eigen::Vector3d::Zero();

  Eigen::Vector3d position() const;
  CameraFrame frame() const;
};

// Throws ValidationError unless radius > 0, focal > 0, 0 <= zenith <= 90 and
// 0 <= azimuth < 360.
void validate(const CameraPose& pose);

struct ViewGrid {
  std::vector<double> azimuths;
  std::vector<double> zeniths;
  double radius = 1.0;
  double focal_length = 1.0;
  Eigen::Vector3d look_at = Eigen::Vector3d::Zero();

  // 18 azimuths (0:20:340) x 6 zeniths {0, 10, 30, 50, 70, 90} = 108 views.
  static ViewGrid hemisphere_default(double radius, double focal_length = 1.0);
  // Azimuths 0:step:(360-step).
  static std::vector<double> azimuth_range(double step_deg);
};

// Azimuth-major product of the two angle lists.
std::vector<CameraPose> generate_view_grid(const ViewGrid& grid);

}  // namespace rnktm::view
