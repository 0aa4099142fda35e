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
#include <string>
#include <string_view>
#include <vector>

#include "rnktm/body_model.hpp"
#include "rnktm/bvh.hpp"

namespace rnktm::mocap {

// Parametric motion families used to synthesise a mocap-like corpus when no
// recorded BVH files are at hand.
enum class MotionFamily {
  kWalk,
  kRun,
  kWave,
  kPunch,
  kKick,
  kSquat,
  kJump,
  kBend,
  kClap,
  kSpin,
  kArmCircle,
  kSidestep,
  kThrow,
  kStretch,
};

inline constexpr std::size_t kMotionFamilyCount = 14;

std::string_view family_name(MotionFamily f);
MotionFamily family_from_index(std::size_t i);
MotionFamily parse_family(std::string_view name);

// Style parameters of one performance. Drawn randomly by `random_style`;
// two styles of the same family give visibly different but related motion.
struct MotionStyle {
  double tempo = 1.0;         // cycles per second
  double amplitude = 1.0;     // scales every joint excursion
  double phase = 0.0;         // radians
  double facing_deg = 0.0;    // yaw of the performer about the vertical axis
  double travel_speed = 0.0;  // metres per second along the facing direction
  double lean_deg = 0.0;      // constant forward lean of the spine
  double asymmetry = 0.0;     // left/right amplitude imbalance in [-1, 1]
};

// `spread` in [0, 1] scales how far parameters stray from the family default.
MotionStyle random_style(MotionFamily family, std::uint64_t seed, double spread = 1.0);

// 17-joint Y-up humanoid in metres; `height_scale` multiplies every offset.
SkeletonRig humanoid_rig(double height_scale = 1.0);

// Capsule radii tuned for `humanoid_rig`. `jitter` in [0, 1] randomises the
// per-bone scale by up to +-25% * jitter.
BodyShape humanoid_body_shape(std::uint64_t seed, double jitter = 0.0);

MotionSequence generate_motion(const SkeletonRig& humanoid, MotionFamily family,
                               const MotionStyle& style, std::size_t frames,
                               double frame_time = 1.0 / 30.0);

}  // namespace rnktm::mocap
