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

#include "rnktm/point_cloud.hpp"

#include <cmath>
#include <fstream>

#include "rnktm/binary_io.hpp"
#include "rnktm/error.hpp"
#include "rnktm/kinematics.hpp"

namespace rnktm {
namespace {

constexpr io::Magic kMagic{'P', 'C', 'S', 'Q'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

void validate(const PointCloudSequence& seq) {
  if (seq.frames.empty()) return;
  const auto& ids = seq.frames.front().point_ids;
  for (std::size_t f = 0; f < seq.frames.size(); ++f) {
    const auto& fr = seq.frames[f];
    if (fr.point_ids != ids) {
      throw ValidationError("frame " + std::to_string(f) + " point ids differ from frame 0");
    }
    if (fr.positions.size() != fr.size() || fr.normals.size() != fr.size()) {
      throw ValidationError("frame " + std::to_string(f) + " has mismatched array lengths");
    }
    for (const auto& n : fr.normals) {
      if (std::abs(n.norm() - 1.0) > 1e-6) {
        throw ValidationError("frame " + std::to_string(f) + " has a non-unit normal");
      }
    }
  }
}

PointCloudSequence y_up_to_z_up(const PointCloudSequence& seq) {
  // (x, y, z) -> (x, -z, y): rotation of +90 degrees about X.
  PointCloudSequence out = seq;
  for (auto& fr : out.frames) {
    for (auto& p : fr.positions) p = Eigen::Vector3d(p.x(), -p.z(), p.y());
    for (auto& n : fr.normals) n = Eigen::Vector3d(n.x(), -n.z(), n.y());
  }
  return out;
}

BoundingSphere bounding_sphere(const PointCloudSequence& seq) {
  BoundingSphere bs;
  std::size_t n = 0;
  for (const auto& fr : seq.frames) {
    for (const auto& p : fr.positions) {
      bs.center += p;
      ++n;
    }
  }
  if (n == 0) return bs;
  bs.center /= static_cast<double>(n);
  for (const auto& fr : seq.frames) {
    for (const auto& p : fr.positions) bs.radius = std::max(bs.radius, (p - bs.center).norm());
  }
  return bs;
}

void write_point_cloud_sequence(std::ostream& out, const PointCloudSequence& seq) {
  validate(seq);
  io::BinaryWriter w(out);
  w.magic(kMagic);
  w.u32(kVersion);
  w.u32(static_cast<std::uint32_t>(seq.frame_count()));
  w.u32(static_cast<std::uint32_t>(seq.point_count()));
  w.f64(seq.frame_time);
  for (const auto& fr : seq.frames) {
    for (auto id : fr.point_ids) w.u64(id);
    for (const auto& p : fr.positions) {
      w.f32(static_cast<float>(p.x()));
      w.f32(static_cast<float>(p.y()));
      w.f32(static_cast<float>(p.z()));
    }
    for (const auto& n : fr.normals) {
      w.f32(static_cast<float>(n.x()));
      w.f32(static_cast<float>(n.y()));
      w.f32(static_cast<float>(n.z()));
    }
  }
}

PointCloudSequence read_point_cloud_sequence(std::istream& in) {
  io::BinaryReader r(in, "point-cloud sequence");
  r.expect_magic(kMagic);
  const auto version = r.u32();
  if (version != kVersion) throw FormatError("point-cloud sequence: unsupported version");
  const auto frames = r.u32();
  const auto points = r.u32();
  PointCloudSequence seq;
  seq.frame_time = r.f64();
  seq.frames.resize(frames);
  auto vec3 = [&r] {
    const double x = r.f32();
    const double y = r.f32();
    const double z = r.f32();
    return Eigen::Vector3d(x, y, z);
  };
  for (auto& fr : seq.frames) {
    fr.point_ids.resize(points);
    fr.positions.resize(points);
    fr.normals.resize(points);
    for (auto& id : fr.point_ids) id = r.u64();
    for (auto& p : fr.positions) p = vec3();
    // stored in single precision; renormalise so downstream invariants hold
    for (auto& n : fr.normals) n = vec3().normalized();
  }
  validate(seq);
  return seq;
}

void save_point_cloud_sequence(const std::filesystem::path& path, const PointCloudSequence& seq) {
  auto out = io::open_for_write(path);
  write_point_cloud_sequence(out, seq);
  if (!out) throw Error("write failed: " + path.string());
}

PointCloudSequence load_point_cloud_sequence(const std::filesystem::path& path) {
  auto in = io::open_for_read(path);
  return read_point_cloud_sequence(in);
}

namespace mocap {

PointCloudSequence animate(const CapsuleBodyModel& model, const SkeletonRig& rig,
                           const MotionSequence& motion) {
  if (model.joint_count != rig.joint_count()) {
    throw ValidationError("body model was built for a different rig");
  }
  for (const auto& s : model.samples) {
    if (s.bone >= rig.joint_count()) throw ValidationError("sample references unknown bone");
  }
  PointCloudSequence seq;
  seq.frame_time = motion.frame_time();
  seq.frames.resize(motion.frame_count());
  for (std::size_t f = 0; f < motion.frame_count(); ++f) {
    const auto world = forward_kinematics(rig, motion.frame(f));
    auto& fr = seq.frames[f];
    fr.positions.reserve(model.samples.size());
    fr.normals.reserve(model.samples.size());
    fr.point_ids.reserve(model.samples.size());
    for (const auto& s : model.samples) {
      const auto& t = world[s.bone];
      fr.positions.push_back(t * s.local_position);
      fr.normals.push_back(t.linear() * s.local_normal);
      fr.point_ids.push_back(s.point_id);
    }
  }
  return seq;
}

}  // namespace mocap
}  // namespace rnktm
