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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace rnktm::mocap {

enum class Channel : std::uint8_t {
  kXposition,
  kYposition,
  kZposition,
  kXrotation,
  kYrotation,
  kZrotation,
};

bool is_rotation(Channel c);
std::string_view channel_name(Channel c);
std::optional<Channel> parse_channel(std::string_view name);

struct Joint {
  std::string name;
  std::optional<std::size_t> parent;
  Eigen::Vector3d offset = Eigen::Vector3d::Zero();
  std::vector<Channel> channels;
};

// Terminal "End Site" of a chain. Carries geometry only.
struct EndSite {
  std::size_t parent = 0;
  Eigen::Vector3d offset = Eigen::Vector3d::Zero();
};

// Joint hierarchy in topological order: joint 0 is the root and every other
// joint's parent precedes it. Rotation channels are exactly three per joint;
// translation channels (three) are only accepted on the root.
class SkeletonRig {
 public:
  SkeletonRig() = default;
  SkeletonRig(std::vector<Joint> joints, std::vector<EndSite> end_sites);

  const std::vector<Joint>& joints() const { return joints_; }
  const std::vector<EndSite>& end_sites() const { return end_sites_; }
  std::size_t joint_count() const { return joints_.size(); }
  std::size_t channel_count() const { return channel_count_; }

  // Index of the first channel value of `joint` inside a motion frame.
  std::size_t channel_offset(std::size_t joint) const { return channel_offsets_[joint]; }

  std::optional<std::size_t> find_joint(std::string_view name) const;

 private:
  std::vector<Joint> joints_;
  std::vector<EndSite> end_sites_;
  std::vector<std::size_t> channel_offsets_;
  std::size_t channel_count_ = 0;
};

// Per-frame channel values in rig order: degrees for rotations, native BVH
// length units for translations.
class MotionSequence {
 public:
  MotionSequence() = default;
  MotionSequence(double frame_time, std::vector<std::vector<double>> frames,
                 std::size_t channel_count);

  double frame_time() const { return frame_time_; }
  std::size_t frame_count() const { return frames_.size(); }
  std::span<const double> frame(std::size_t i) const { return frames_[i]; }
  const std::vector<std::vector<double>>& frames() const { return frames_; }

 private:
  double frame_time_ = 0.0;
  std::vector<std::vector<double>> frames_;
};

struct Bvh {
  SkeletonRig rig;
  MotionSequence motion;
};

struct BvhParseOptions {
  // Sequences shorter than this are rejected. A trajectory horizon of L
  // frames needs at least L + 1 frames.
  std::size_t min_frames = 1;
};

// Parses a BVH document (HIERARCHY + MOTION). Throws ParseError with the
// offending line on malformed input.
Bvh parse_bvh(std::string_view text, const BvhParseOptions& options = {});

std::string write_bvh(const SkeletonRig& rig, const MotionSequence& motion);

}  // namespace rnktm::mocap
