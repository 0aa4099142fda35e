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

#include "rnktm/camera.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

#include "rnktm/error.hpp"

namespace rnktm::view {
namespace {

double rad(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace

Eigen::Vector3d CameraPose::position() const {
  const double az = rad(azimuth_deg);
  const double zen = rad(zenith_deg);
  return look_at + radius * Eigen::Vector3d(std::sin(zen) * std::cos(az),
                                            std::sin(zen) * std::sin(az), std::cos(zen));
}

CameraFrame CameraPose::frame() const {
  const double az = rad(azimuth_deg);
  const double zen = rad(zenith_deg);
  const Eigen::Vector3d e_r(std::sin(zen) * std::cos(az), std::sin(zen) * std::sin(az),
                            std::cos(zen));
  const Eigen::Vector3d e_zen(std::cos(zen) * std::cos(az), std::cos(zen) * std::sin(az),
                              -std::sin(zen));
  CameraFrame f;
  f.origin = look_at + radius * e_r;
  f.forward = -e_r;
  f.up = -e_zen;
  f.right = f.forward.cross(f.up);
  return f;
}

void validate(const CameraPose& pose) {
  if (!(pose.radius > 0.0)) throw ValidationError("camera radius must be positive");
  if (!(pose.focal_length > 0.0)) throw ValidationError("focal length must be positive");
  if (!(pose.zenith_deg >= 0.0 && pose.zenith_deg <= 90.0)) {
    throw ValidationError("zenith must lie in [0, 90] degrees");
  }
  if (!(pose.azimuth_deg >= 0.0 && pose.azimuth_deg < 360.0)) {
    throw ValidationError("azimuth must lie in [0, 360) degrees");
  }
}

ViewGrid ViewGrid::hemisphere_default(double radius, double focal_length) {
  ViewGrid g;
  g.azimuths = azimuth_range(20.0);
  g.zeniths = {0.0, 10.0, 30.0, 50.0, 70.0, 90.0};
  g.radius = radius;
  g.focal_length = focal_length;
  return g;
}

std::vector<double> ViewGrid::azimuth_range(double step_deg) {
  if (!(step_deg > 0.0) || step_deg > 360.0) throw ValidationError("azimuth step must be in (0, 360]");
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double a = i * step_deg;
    if (a >= 360.0 - 1e-9) break;
    out.push_back(a);
  }
  return out;
}

std::vector<CameraPose> generate_view_grid(const ViewGrid& grid) {
  if (grid.azimuths.empty() || grid.zeniths.empty()) {
    throw ValidationError("view grid needs at least one azimuth and one zenith");
  }
  std::vector<CameraPose> poses;
  poses.reserve(grid.azimuths.size() * grid.zeniths.size());
  for (double az : grid.azimuths) {
    for (double zen : grid.zeniths) {
      CameraPose p;
      p.azimuth_deg = az;
      p.zenith_deg = zen;
      p.radius = grid.radius;
      p.focal_length = grid.focal_length;
      p.look_at = grid.look_at;
      validate(p);
      poses.push_back(p);
    }
  }
  return poses;
}

}  // namespace rnktm::view
