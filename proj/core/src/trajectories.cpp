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

#include "rnktm/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <json.hpp>

#include "rnktm/binary_io.hpp"
#include "rnktm/error.hpp"

namespace rnktm::traj {
namespace {

constexpr io::Magic kMagic{'T', 'R', 'A', 'J'};
constexpr io::Magic kTagMagic{'T', 'A', 'G', 'S'};
constexpr std::uint32_t kVersion = 1;

using IdIndex = std::unordered_map<std::uint64_t, std::size_t>;

std::vector<IdIndex> index_frames(std::span<const view::Projected2DFrame> frames) {
  std::vector<IdIndex> out(frames.size());
  for (std::size_t f = 0; f < frames.size(); ++f) {
    out[f].reserve(frames[f].size());
    for (std::size_t i = 0; i < frames[f].size(); ++i) out[f].emplace(frames[f].point_ids[i], i);
  }
  return out;
}

}  // namespace

double median_displacement(std::span<const view::Projected2DFrame> frames) {
  const auto index = index_frames(frames);
  std::vector<double> d;
  for (std::size_t f = 0; f + 1 < frames.size(); ++f) {
    for (std::size_t i = 0; i < frames[f].size(); ++i) {
      const auto it = index[f + 1].find(frames[f].point_ids[i]);
      if (it != index[f + 1].end()) {
        d.push_back((frames[f + 1].points[it->second] - frames[f].points[i]).norm());
      }
    }
  }
  if (d.empty()) return 0.0;
  const auto mid = d.begin() + static_cast<std::ptrdiff_t>(d.size() / 2);
  std::nth_element(d.begin(), mid, d.end());
  return *mid;
}

std::vector<Track> link_tracks(std::span<const view::Projected2DFrame> frames,
                               const LinkOptions& options) {
  if (options.horizon < 1) throw ValidationError("track horizon must be at least 1");
  if (options.stride < 1) throw ValidationError("track stride must be at least 1");
  const double threshold =
      options.min_total_motion ? *options.min_total_motion : 1e-6 * median_displacement(frames);

  const auto index = index_frames(frames);
  const std::size_t len = options.horizon + 1;
  std::vector<Track> tracks;
  for (std::size_t start = 0; start + len <= frames.size(); start += options.stride) {
    const auto& first = frames[start];
    for (std::size_t i = 0; i < first.size(); ++i) {
      Track t;
      t.point_id = first.point_ids[i];
      t.start_frame = start;
      t.positions.reserve(len);
      t.positions.push_back(first.points[i]);
      double total = 0.0;
      bool complete = true;
      for (std::size_t k = 1; k < len; ++k) {
        const auto it = index[start + k].find(t.point_id);
        if (it == index[start + k].end()) {
          complete = false;
          break;
        }
        const Eigen::Vector2d& p = frames[start + k].points[it->second];
        total += (p - t.positions.back()).norm();
        t.positions.push_back(p);
      }
      if (complete && total > 0.0 && total >= threshold) tracks.push_back(std::move(t));
    }
  }
  return tracks;
}

TrajectoryDescriptor::TrajectoryDescriptor(Eigen::VectorXd values) : values_(std::move(values)) {
  if (values_.size() == 0 || values_.size() % 2 != 0) {
    throw ValidationError("trajectory descriptor needs an even, non-zero length");
  }
}

double TrajectoryDescriptor::total_length() const {
  double s = 0.0;
  for (Eigen::Index i = 0; i + 1 < values_.size(); i += 2) {
    s += std::hypot(values_[i], values_[i + 1]);
  }
  return s;
}

TrajectoryDescriptor normalize_track(const Track& track) {
  const std::size_t L = track.horizon();
  if (L < 1) throw ValidationError("track needs at least two positions");
  Eigen::VectorXd v(static_cast<Eigen::Index>(2 * L));
  double total = 0.0;
  for (std::size_t k = 0; k < L; ++k) {
    const Eigen::Vector2d d = track.positions[k + 1] - track.positions[k];
    v[static_cast<Eigen::Index>(2 * k)] = d.x();
    v[static_cast<Eigen::Index>(2 * k + 1)] = d.y();
    total += d.norm();
  }
  if (!(total > 0.0)) throw ValidationError("track has zero total displacement");
  return TrajectoryDescriptor(v / total);
}

Eigen::MatrixXd extract_descriptors(std::span<const view::Projected2DFrame> frames,
                                    const LinkOptions& options) {
  const auto tracks = link_tracks(frames, options);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(2 * options.horizon),
                      static_cast<Eigen::Index>(tracks.size()));
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    out.col(static_cast<Eigen::Index>(i)) = normalize_track(tracks[i]).values();
  }
  return out;
}

std::string_view source_name(TrajectorySource s) {
  switch (s) {
    case TrajectorySource::kSynthetic: return "synthetic";
    case TrajectorySource::kReal: return "real";
    case TrajectorySource::kUnknown: break;
  }
  return "unknown";
}

void write_trajectories(std::ostream& out, const TrajectoryFile& file) {
  const auto dim = static_cast<Eigen::Index>(2 * file.horizon);
  if (file.horizon < 1) throw ValidationError("trajectory horizon must be at least 1");
  if (file.descriptors.cols() > 0 && file.descriptors.rows() != dim) {
    throw ValidationError("descriptor dimension " + std::to_string(file.descriptors.rows()) +
                          " does not match 2L = " + std::to_string(dim));
  }
  io::BinaryWriter w(out);
  w.magic(kMagic);
  w.u32(kVersion);
  w.u32(file.horizon);
  w.u64(static_cast<std::uint64_t>(file.descriptors.cols()));
  for (Eigen::Index c = 0; c < file.descriptors.cols(); ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) w.f32(static_cast<float>(file.descriptors(r, c)));
  }
  if (file.video_id || file.source != TrajectorySource::kUnknown) {
    nlohmann::json tags;
    if (file.video_id) tags["video_id"] = *file.video_id;
    tags["source"] = std::string(source_name(file.source));
    w.magic(kTagMagic);
    w.sized_string(tags.dump());
  }
}

TrajectoryFile read_trajectories(std::istream& in) {
  io::BinaryReader r(in, "trajectory file");
  r.expect_magic(kMagic);
  if (r.u32() != kVersion) throw FormatError("trajectory file: unsupported version");
  TrajectoryFile file;
  file.horizon = r.u32();
  if (file.horizon < 1 || file.horizon > 4096) throw FormatError("trajectory file: bad horizon");
  const auto count = r.u64();
  const auto dim = static_cast<Eigen::Index>(2 * file.horizon);
  if (count > (1ULL << 40)) throw FormatError("trajectory file: record count out of range");
  file.descriptors.resize(dim, static_cast<Eigen::Index>(count));
  for (Eigen::Index c = 0; c < file.descriptors.cols(); ++c) {
    for (Eigen::Index r2 = 0; r2 < dim; ++r2) file.descriptors(r2, c) = r.f32();
    const double len = TrajectoryDescriptor(file.descriptors.col(c)).total_length();
    if (!(std::abs(len - 1.0) <= 1e-6)) {
      throw FormatError("trajectory file: record " + std::to_string(c) +
                        " is not normalised (total length " + std::to_string(len) + ")");
    }
  }
  if (!r.at_end()) {
    r.expect_magic(kTagMagic);
    const auto text = r.sized_string(1u << 20);
    nlohmann::json tags;
    try {
      tags = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("trajectory file: bad tag block: ") + e.what());
    }
    if (tags.contains("video_id")) file.video_id = tags["video_id"].get<std::string>();
    const auto src = tags.value("source", std::string("unknown"));
    file.source = src == "synthetic" ? TrajectorySource::kSynthetic
                  : src == "real"    ? TrajectorySource::kReal
                                     : TrajectorySource::kUnknown;
  }
  return file;
}

void save_trajectories(const std::filesystem::path& path, const TrajectoryFile& file) {
  auto out = io::open_for_write(path);
  write_trajectories(out, file);
  if (!out) throw Error("write failed: " + path.string());
}

TrajectoryFile load_trajectories(const std::filesystem::path& path) {
  auto in = io::open_for_read(path);
  try {
    return read_trajectories(in);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace rnktm::traj
