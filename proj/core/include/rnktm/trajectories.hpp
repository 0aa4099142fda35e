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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rnktm/visibility.hpp"

namespace rnktm::traj {

// A point followed over horizon + 1 consecutive frames.
struct Track {
  std::uint64_t point_id = 0;
  std::size_t start_frame = 0;
  std::vector<Eigen::Vector2d> positions;

  std::size_t horizon() const { return positions.empty() ? 0 : positions.size() - 1; }
};

struct LinkOptions {
  std::size_t horizon = 15;
  std::size_t stride = 1;
  // Tracks whose summed displacement is below this are dropped. When unset,
  // 1e-6 times the median inter-frame displacement of the input is used.
  // Tracks with zero motion are always dropped.
  std::optional<double> min_total_motion;
};

// One track per (point, start) where the point is present in all
// horizon + 1 frames starting at a multiple of `stride`.
std::vector<Track> link_tracks(std::span<const view::Projected2DFrame> frames,
                               const LinkOptions& options = {});

// Median length of all inter-frame displacements of points present in two
// consecutive frames; 0 if there are none.
double median_displacement(std::span<const view::Projected2DFrame> frames);

// Displacement sequence divided by its summed length. Values are laid out
// (dx_0, dy_0, dx_1, dy_1, ...) and have 2 * horizon entries.
class TrajectoryDescriptor {
 public:
  TrajectoryDescriptor() = default;
  explicit TrajectoryDescriptor(Eigen::VectorXd values);

  const Eigen::VectorXd& values() const { return values_; }
  std::size_t horizon() const { return static_cast<std::size_t>(values_.size()) / 2; }
  // Sum of the per-step displacement lengths; 1 for a normalised descriptor.
  double total_length() const;

 private:
  Eigen::VectorXd values_;
};

// Throws ValidationError if the track has zero total displacement.
TrajectoryDescriptor normalize_track(const Track& track);

// Convenience: link + normalise, one column per descriptor (2L x N).
Eigen::MatrixXd extract_descriptors(std::span<const view::Projected2DFrame> frames,
                                    const LinkOptions& options = {});

enum class TrajectorySource { kUnknown, kSynthetic, kReal };

std::string_view source_name(TrajectorySource s);

// Descriptors of one video. Columns are descriptors.
struct TrajectoryFile {
  std::uint32_t horizon = 15;
  Eigen::MatrixXd descriptors;
  std::optional<std::string> video_id;
  TrajectorySource source = TrajectorySource::kUnknown;

  std::size_t count() const { return static_cast<std::size_t>(descriptors.cols()); }
};

// Layout: "TRAJ", u32 version, u32 L, u64 count, count * 2L f32. An optional
// trailer ("TAGS", u32 length, UTF-8 JSON) carries video_id and source.
void write_trajectories(std::ostream& out, const TrajectoryFile& file);
TrajectoryFile read_trajectories(std::istream& in);
void save_trajectories(const std::filesystem::path& path, const TrajectoryFile& file);
TrajectoryFile load_trajectories(const std::filesystem::path& path);

}  // namespace rnktm::traj
