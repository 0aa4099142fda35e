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

#include "rnktm/render.hpp"

#include "rnktm/binary_io.hpp"
#include "rnktm/error.hpp"

namespace rnktm::view {
namespace {

constexpr io::Magic kMagic{'P', 'J', '2', 'D'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

ProjectedSequence render_view(const PointCloudSequence& seq, const CameraPose& camera,
                              const RenderOptions& options) {
  validate(camera);
  ProjectedSequence out;
  out.camera = camera;
  out.frame_time = seq.frame_time;
  out.frames.reserve(seq.frame_count());
  for (const auto& frame : seq.frames) {
    const VisibilityMask mask = visible_points(frame, camera, options.hpr_gamma);
    out.frames.push_back(project_perspective(frame, mask, camera));
  }
  return out;
}

std::vector<ProjectedSequence> render_sequence(const PointCloudSequence& seq,
                                               const std::vector<CameraPose>& cameras,
                                               const RenderOptions& options) {
  std::vector<ProjectedSequence> out;
  out.reserve(cameras.size());
  for (const auto& cam : cameras) out.push_back(render_view(seq, cam, options));
  return out;
}

ViewGrid fit_view_grid(const PointCloudSequence& seq, std::vector<double> azimuths,
                       std::vector<double> zeniths, double radius_scale, double focal_length) {
  if (!(radius_scale > 1.0)) throw ValidationError("radius scale must exceed 1");
  const auto bs = bounding_sphere(seq);
  if (!(bs.radius > 0.0)) throw ValidationError("sequence has zero extent");
  ViewGrid g;
  g.azimuths = std::move(azimuths);
  g.zeniths = std::move(zeniths);
  g.radius = radius_scale * bs.radius;
  g.focal_length = focal_length;
  g.look_at = bs.center;
  return g;
}

void write_projected_sequence(std::ostream& out, const ProjectedSequence& seq) {
  io::BinaryWriter w(out);
  w.magic(kMagic);
  w.u32(kVersion);
  w.f64(seq.camera.azimuth_deg);
  w.f64(seq.camera.zenith_deg);
  w.f64(seq.camera.radius);
  w.f64(seq.camera.focal_length);
  w.u32(static_cast<std::uint32_t>(seq.frames.size()));
  for (const auto& fr : seq.frames) {
    w.u32(static_cast<std::uint32_t>(fr.size()));
    for (auto id : fr.point_ids) w.u64(id);
    for (const auto& p : fr.points) {
      w.f32(static_cast<float>(p.x()));
      w.f32(static_cast<float>(p.y()));
    }
  }
}

ProjectedSequence read_projected_sequence(std::istream& in) {
  io::BinaryReader r(in, "projected sequence");
  r.expect_magic(kMagic);
  if (r.u32() != kVersion) throw FormatError("projected sequence: unsupported version");
  ProjectedSequence seq;
  seq.camera.azimuth_deg = r.f64();
  seq.camera.zenith_deg = r.f64();
  seq.camera.radius = r.f64();
  seq.camera.focal_length = r.f64();
  seq.frames.resize(r.u32());
  for (auto& fr : seq.frames) {
    const auto n = r.u32();
    fr.point_ids.resize(n);
    fr.points.resize(n);
    for (auto& id : fr.point_ids) id = r.u64();
    for (auto& p : fr.points) {
      const double x = r.f32();
      const double y = r.f32();
      p = {x, y};
    }
  }
  return seq;
}

void save_projected_sequence(const std::filesystem::path& path, const ProjectedSequence& seq) {
  auto out = io::open_for_write(path);
  write_projected_sequence(out, seq);
  if (!out) throw Error("write failed: " + path.string());
}

ProjectedSequence load_projected_sequence(const std::filesystem::path& path) {
  auto in = io::open_for_read(path);
  return read_projected_sequence(in);
}

}  // namespace rnktm::view
