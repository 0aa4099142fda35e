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

#include "rnktm/body_model.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Geometry>

#include "rnktm/error.hpp"

namespace rnktm::mocap {
namespace {

constexpr double kPi = std::numbers::pi;

// Orthonormal pair perpendicular to `axis` (unit).
void perpendicular_basis(const Eigen::Vector3d& axis, Eigen::Vector3d& u, Eigen::Vector3d& v) {
  const Eigen::Vector3d helper =
      std::abs(axis.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  u = axis.cross(helper).normalized();
  v = axis.cross(u);
}

// splitmix64 finaliser; derives independent per-segment seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double CapsuleSegment::surface_area() const {
  return 2.0 * kPi * radius * (2.0 * radius + length());
}

std::vector<SurfaceSample> sample_capsule(const CapsuleSegment& seg, std::uint64_t first_id,
                                          std::uint64_t seed) {
  if (!(seg.radius > 0.0)) throw ValidationError("capsule radius must be positive");
  if (!(seg.density > 0.0)) throw ValidationError("sample density must be positive");

  const double len = seg.length();
  const Eigen::Vector3d axis =
      len > 0.0 ? Eigen::Vector3d((seg.end - seg.start) / len) : Eigen::Vector3d::UnitY();
  Eigen::Vector3d u, v;
  perpendicular_basis(axis, u, v);

  const double cyl_area = 2.0 * kPi * seg.radius * len;
  const double area = seg.surface_area();
  const auto count = static_cast<std::size_t>(std::llround(seg.density * area));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<SurfaceSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    SurfaceSample s;
    s.point_id = first_id + i;
    s.bone = seg.bone;
    const double pick = unit(rng) * area;
    if (pick < cyl_area) {
      const double t = unit(rng) * len;
      const double phi = unit(rng) * 2.0 * kPi;
      const Eigen::Vector3d radial = std::cos(phi) * u + std::sin(phi) * v;
      s.local_normal = radial;
      s.local_position = seg.start + t * axis + seg.radius * radial;
    } else {
      // hemisphere caps; uniform on the sphere restricted to the outer side
      const bool at_end = unit(rng) < 0.5;
      const double z = unit(rng);  // cos of angle from the outward axis
      const double phi = unit(rng) * 2.0 * kPi;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const Eigen::Vector3d out_axis = at_end ? axis : Eigen::Vector3d(-axis);
      Eigen::Vector3d n = z * out_axis + rho * (std::cos(phi) * u + std::sin(phi) * v);
      n.normalize();
      s.local_normal = n;
      s.local_position = (at_end ? seg.end : seg.start) + seg.radius * n;
    }
    out.push_back(s);
  }
  return out;
}

CapsuleBodyModel build_body_model(const SkeletonRig& rig, const BodyShape& shape, double density,
                                  std::uint64_t seed) {
  if (!(density > 0.0)) throw ValidationError("sample density must be positive");
  if (!shape.radius_scale.empty() && shape.radius_scale.size() != rig.joint_count()) {
    throw ValidationError("radius_scale must have one entry per joint");
  }
  if (shape.radius_fraction < 0.0 || shape.min_radius < 0.0) {
    throw ValidationError("radius parameters must be non-negative");
  }

  CapsuleBodyModel model;
  model.joint_count = rig.joint_count();

  auto add_link = [&](std::size_t bone, const Eigen::Vector3d& end, const std::string& what) {
    const double scale = shape.radius_scale.empty() ? 1.0 : shape.radius_scale[bone];
    if (!(scale > 0.0)) throw ValidationError("radius scale for '" + what + "' must be positive");
    const double len = end.norm();
    const double radius = std::max(shape.min_radius, shape.radius_fraction * len) * scale;
    if (len == 0.0 && radius == 0.0) {
      throw ValidationError("degenerate bone '" + what +
                            "': zero length and zero radius (set a minimum radius)");
    }
    CapsuleSegment seg;
    seg.bone = bone;
    seg.start = Eigen::Vector3d::Zero();
    seg.end = end;
    seg.radius = radius;
    seg.density = density;
    model.segments.push_back(seg);
  };

  const auto& joints = rig.joints();
  for (std::size_t j = 1; j < joints.size(); ++j) {
    add_link(*joints[j].parent, joints[j].offset, joints[*joints[j].parent].name + "->" + joints[j].name);
  }
  for (const EndSite& e : rig.end_sites()) {
    add_link(e.parent, e.offset, joints[e.parent].name + "->end");
  }

  std::uint64_t next_id = 0;
  for (std::size_t s = 0; s < model.segments.size(); ++s) {
    auto samples = sample_capsule(model.segments[s], next_id, mix_seed(seed, s));
    next_id += samples.size();
    model.samples.insert(model.samples.end(), samples.begin(), samples.end());
  }
  return model;
}

}  // namespace rnktm::mocap
