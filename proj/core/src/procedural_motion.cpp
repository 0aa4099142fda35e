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

#include "rnktm/procedural_motion.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "rnktm/error.hpp"

namespace rnktm::mocap {
namespace {

constexpr double kPi = std::numbers::pi;

enum J : std::size_t {
  kHips, kSpine, kChest, kNeck, kHead,
  kLShoulder, kLElbow, kLWrist,
  kRShoulder, kRElbow, kRWrist,
  kLHip, kLKnee, kLAnkle,
  kRHip, kRKnee, kRAnkle,
  kJointCount
};

constexpr std::array<std::string_view, kMotionFamilyCount> kNames = {
    "walk", "run", "wave", "punch", "kick", "squat", "jump",
    "bend", "clap", "spin", "arm_circle", "sidestep", "throw", "stretch"};

constexpr double kHipHeight = 0.91;

// Joint angles in degrees. Non-root joints use channel order
// Zrotation Xrotation Yrotation; the root uses Yrotation Xrotation Zrotation
// so that yaw is outermost.
struct Pose {
  struct Angles {
    double z = 0.0, x = 0.0, y = 0.0;
  };
  std::array<Angles, kJointCount> rot{};
  Eigen::Vector3d root_offset = Eigen::Vector3d::Zero();  // body frame: x lateral, y up, z forward
  double yaw = 0.0;
  double pitch = 0.0;

  enum Side { kLeft, kRight };

  // raise: 0 hanging, 90 horizontal, 165 overhead. forward: positive swings
  // the arm toward the front. bend: elbow flexion toward the front.
  void arm(Side s, double raise, double forward, double bend) {
    const double sign = s == kLeft ? 1.0 : -1.0;
    auto& sh = rot[s == kLeft ? kLShoulder : kRShoulder];
    auto& el = rot[s == kLeft ? kLElbow : kRElbow];
    sh.z = sign * (raise - 75.0);
    sh.y = -sign * forward;
    el.y = -sign * (10.0 + bend);
  }

  // flex: positive swings the thigh forward. knee: positive bends the shin
  // back. abduct: positive moves the leg outward.
  void leg(Side s, double flex, double knee, double abduct = 0.0) {
    const double sign = s == kLeft ? 1.0 : -1.0;
    rot[s == kLeft ? kLHip : kRHip].x = -flex;
    rot[s == kLeft ? kLHip : kRHip].z = sign * abduct;
    rot[s == kLeft ? kLKnee : kRKnee].x = knee;
    rot[s == kLeft ? kLAnkle : kRAnkle].x = -0.3 * knee + 0.2 * flex;
  }

  void spine(double forward, double twist = 0.0, double side = 0.0) {
    rot[kSpine].x = 0.6 * forward;
    rot[kChest].x = 0.4 * forward;
    rot[kSpine].y = 0.5 * twist;
    rot[kChest].y = 0.5 * twist;
    rot[kSpine].z = side;
  }
};

double pos(double v) { return v > 0.0 ? v : 0.0; }
double ramp(double v) { return 0.5 * (1.0 - std::cos(v)); }  // 0..1

Pose pose_at(MotionFamily family, const MotionStyle& st, double t) {
  Pose p;
  const double a = st.amplitude;
  const double w = 2.0 * kPi * st.tempo * t + st.phase;
  const double s = std::sin(w);
  const double c = std::cos(w);
  const double left = 1.0 + 0.5 * st.asymmetry;
  const double right = 1.0 - 0.5 * st.asymmetry;
  double travel = st.travel_speed * t;
  double lateral = 0.0;
  double lift = 0.0;
  double lean = st.lean_deg;

  switch (family) {
    case MotionFamily::kWalk:
      p.leg(Pose::kLeft, 25.0 * a * left * s, 8.0 + 40.0 * a * pos(-s));
      p.leg(Pose::kRight, -25.0 * a * right * s, 8.0 + 40.0 * a * pos(s));
      p.arm(Pose::kLeft, 5.0, -20.0 * a * s, 10.0);
      p.arm(Pose::kRight, 5.0, 20.0 * a * s, 10.0);
      lift = 0.02 * a * std::abs(c);
      travel += 0.9 * st.tempo * t;
      break;
    case MotionFamily::kRun:
      p.leg(Pose::kLeft, 45.0 * a * left * s, 25.0 + 70.0 * a * pos(-s));
      p.leg(Pose::kRight, -45.0 * a * right * s, 25.0 + 70.0 * a * pos(s));
      p.arm(Pose::kLeft, 15.0, -40.0 * a * s, 80.0);
      p.arm(Pose::kRight, 15.0, 40.0 * a * s, 80.0);
      lift = 0.06 * a * std::abs(s);
      lean += 12.0;
      travel += 2.2 * st.tempo * t;
      break;
    case MotionFamily::kWave:
      p.arm(Pose::kRight, 150.0, 10.0, 35.0 + 35.0 * a * s);
      p.arm(Pose::kLeft, 5.0, 0.0, 10.0);
      p.rot[kRWrist].z = 20.0 * a * s;
      p.spine(0.0, 0.0, 4.0 * a * s);
      break;
    case MotionFamily::kPunch: {
      const double l = pos(s) * a * left;
      const double r = pos(-s) * a * right;
      p.arm(Pose::kLeft, 20.0 + 70.0 * l, 60.0 + 30.0 * l, 100.0 * (1.0 - l));
      p.arm(Pose::kRight, 20.0 + 70.0 * r, 60.0 + 30.0 * r, 100.0 * (1.0 - r));
      p.spine(5.0, 25.0 * a * s);
      p.leg(Pose::kLeft, 15.0, 20.0);
      p.leg(Pose::kRight, -10.0, 15.0);
      break;
    }
    case MotionFamily::kKick: {
      const double k = pos(s) * a * right;
      p.leg(Pose::kRight, 80.0 * k, 70.0 * (1.0 - k) * pos(s) + 10.0);
      p.leg(Pose::kLeft, -5.0, 12.0);
      p.arm(Pose::kLeft, 40.0 + 20.0 * k, 10.0, 30.0);
      p.arm(Pose::kRight, 40.0 + 20.0 * k, -20.0, 30.0);
      lean -= 10.0 * k;
      break;
    }
    case MotionFamily::kSquat: {
      const double d = ramp(w) * a;
      p.leg(Pose::kLeft, 85.0 * d, 120.0 * d);
      p.leg(Pose::kRight, 85.0 * d, 120.0 * d);
      p.arm(Pose::kLeft, 10.0 + 70.0 * d, 70.0 * d, 5.0);
      p.arm(Pose::kRight, 10.0 + 70.0 * d, 70.0 * d, 5.0);
      lift = -0.38 * d;
      lean += 25.0 * d;
      break;
    }
    case MotionFamily::kJump: {
      const double up = pos(s) * a;
      const double down = pos(-s) * a;
      p.leg(Pose::kLeft, 40.0 * down, 70.0 * down);
      p.leg(Pose::kRight, 40.0 * down, 70.0 * down);
      p.arm(Pose::kLeft, 20.0 + 140.0 * up, 20.0, 10.0);
      p.arm(Pose::kRight, 20.0 + 140.0 * up, 20.0, 10.0);
      lift = 0.3 * up - 0.2 * down;
      lean += 15.0 * down;
      break;
    }
    case MotionFamily::kBend: {
      const double d = ramp(w) * a;
      p.spine(75.0 * d, 0.0, 5.0 * st.asymmetry * d);
      p.leg(Pose::kLeft, 20.0 * d, 10.0 * d);
      p.leg(Pose::kRight, 20.0 * d, 10.0 * d);
      p.arm(Pose::kLeft, 5.0, 60.0 * d, 5.0);
      p.arm(Pose::kRight, 5.0, 60.0 * d, 5.0);
      break;
    }
    case MotionFamily::kClap: {
      const double open = 40.0 * a * (0.5 + 0.5 * s);
      p.arm(Pose::kLeft, 85.0, 90.0 - open, 15.0);
      p.arm(Pose::kRight, 85.0, 90.0 - open, 15.0);
      p.spine(3.0 * s);
      break;
    }
    case MotionFamily::kSpin:
      p.yaw = 200.0 * a * st.tempo * t;
      p.arm(Pose::kLeft, 80.0, 0.0, 5.0);
      p.arm(Pose::kRight, 80.0, 0.0, 5.0);
      p.leg(Pose::kLeft, 10.0 * s, 10.0 + 10.0 * pos(-s));
      p.leg(Pose::kRight, -10.0 * s, 10.0 + 10.0 * pos(s));
      break;
    case MotionFamily::kArmCircle:
      p.arm(Pose::kLeft, 90.0 + 45.0 * a * c, 45.0 * a * s, 5.0);
      p.arm(Pose::kRight, 90.0 + 45.0 * a * c, 45.0 * a * s, 5.0);
      break;
    case MotionFamily::kSidestep:
      lateral = 0.35 * a * s;
      p.leg(Pose::kLeft, 0.0, 10.0 + 20.0 * pos(c), 18.0 * a * pos(c));
      p.leg(Pose::kRight, 0.0, 10.0 + 20.0 * pos(-c), 18.0 * a * pos(-c));
      p.arm(Pose::kLeft, 20.0 + 30.0 * pos(c), 0.0, 20.0);
      p.arm(Pose::kRight, 20.0 + 30.0 * pos(-c), 0.0, 20.0);
      break;
    case MotionFamily::kThrow: {
      const double wind = ramp(w);
      p.arm(Pose::kRight, 160.0 - 110.0 * wind * a, -50.0 + 130.0 * wind * a, 70.0 * (1.0 - wind));
      p.arm(Pose::kLeft, 60.0, 40.0, 20.0);
      p.spine(20.0 * wind, -35.0 + 60.0 * wind * a);
      p.leg(Pose::kLeft, 25.0 * wind, 15.0);
      p.leg(Pose::kRight, -15.0 * wind, 10.0);
      break;
    }
    case MotionFamily::kStretch: {
      const double d = ramp(w) * a;
      p.arm(Pose::kLeft, 5.0 + 160.0 * d, 10.0 * d, 5.0);
      p.arm(Pose::kRight, 5.0 + 160.0 * d, 10.0 * d, 5.0);
      p.spine(-15.0 * d);
      lift = 0.05 * d;
      p.rot[kLAnkle].x = 25.0 * d;
      p.rot[kRAnkle].x = 25.0 * d;
      break;
    }
  }
  p.pitch = lean;
  p.root_offset = {lateral, lift, travel};
  return p;
}

}  // namespace

std::string_view family_name(MotionFamily f) { return kNames[static_cast<std::size_t>(f)]; }

MotionFamily family_from_index(std::size_t i) {
  return static_cast<MotionFamily>(i % kMotionFamilyCount);
}

MotionFamily parse_family(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<MotionFamily>(i);
  }
  throw ValidationError("unknown motion family '" + std::string(name) + "'");
}

MotionStyle random_style(MotionFamily family, std::uint64_t seed, double spread) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  MotionStyle st;
  const double base_tempo = family == MotionFamily::kRun ? 1.4
                            : family == MotionFamily::kSquat || family == MotionFamily::kBend ||
                                    family == MotionFamily::kStretch
                                ? 0.6
                                : 1.0;
  st.tempo = base_tempo * (1.0 + 0.25 * spread * u(rng));
  st.amplitude = 1.0 + 0.2 * spread * u(rng);
  st.phase = kPi * (1.0 + spread * u(rng));
  st.facing_deg = 180.0 * (1.0 + spread * u(rng));
  st.travel_speed = 0.05 * spread * u(rng);
  st.lean_deg = 6.0 * spread * u(rng);
  st.asymmetry = 0.3 * spread * u(rng);
  return st;
}

SkeletonRig humanoid_rig(double height_scale) {
  if (!(height_scale > 0.0)) throw ValidationError("height scale must be positive");
  using C = Channel;
  const std::vector<C> rot = {C::kZrotation, C::kXrotation, C::kYrotation};
  auto j = [&](std::string name, std::size_t parent, double x, double y, double z) {
    Joint out;
    out.name = std::move(name);
    out.parent = parent;
    out.offset = height_scale * Eigen::Vector3d(x, y, z);
    out.channels = rot;
    return out;
  };
  Joint root;
  root.name = "Hips";
  root.channels = {C::kXposition, C::kYposition, C::kZposition,
                   C::kYrotation, C::kXrotation, C::kZrotation};
  std::vector<Joint> joints = {
      root,
      j("Spine", kHips, 0.0, 0.10, 0.0),
      j("Chest", kSpine, 0.0, 0.25, 0.0),
      j("Neck", kChest, 0.0, 0.22, 0.0),
      j("Head", kNeck, 0.0, 0.10, 0.0),
      j("LeftShoulder", kChest, 0.18, 0.18, 0.0),
      j("LeftElbow", kLShoulder, 0.28, 0.0, 0.0),
      j("LeftWrist", kLElbow, 0.26, 0.0, 0.0),
      j("RightShoulder", kChest, -0.18, 0.18, 0.0),
      j("RightElbow", kRShoulder, -0.28, 0.0, 0.0),
      j("RightWrist", kRElbow, -0.26, 0.0, 0.0),
      j("LeftHip", kHips, 0.10, 0.0, 0.0),
      j("LeftKnee", kLHip, 0.0, -0.44, 0.0),
      j("LeftAnkle", kLKnee, 0.0, -0.42, 0.0),
      j("RightHip", kHips, -0.10, 0.0, 0.0),
      j("RightKnee", kRHip, 0.0, -0.44, 0.0),
      j("RightAnkle", kRKnee, 0.0, -0.42, 0.0),
  };
  const double s = height_scale;
  std::vector<EndSite> ends = {
      {kHead, s * Eigen::Vector3d(0.0, 0.18, 0.0)},
      {kLWrist, s * Eigen::Vector3d(0.08, 0.0, 0.0)},
      {kRWrist, s * Eigen::Vector3d(-0.08, 0.0, 0.0)},
      {kLAnkle, s * Eigen::Vector3d(0.0, -0.05, 0.14)},
      {kRAnkle, s * Eigen::Vector3d(0.0, -0.05, 0.14)},
  };
  return SkeletonRig(std::move(joints), std::move(ends));
}

BodyShape humanoid_body_shape(std::uint64_t seed, double jitter) {
  BodyShape shape;
  shape.radius_fraction = 0.12;
  shape.min_radius = 0.035;
  shape.radius_scale = {3.4, 3.6, 4.0, 1.4, 2.9, 1.3, 1.1, 1.0, 1.3, 1.1, 1.0,
                        1.4, 1.1, 1.0, 1.4, 1.1, 1.0};
  if (jitter > 0.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double global = 1.0 + 0.15 * jitter * u(rng);
    for (auto& r : shape.radius_scale) r *= global * (1.0 + 0.1 * jitter * u(rng));
  }
  return shape;
}

MotionSequence generate_motion(const SkeletonRig& humanoid, MotionFamily family,
                               const MotionStyle& style, std::size_t frames, double frame_time) {
  if (humanoid.joint_count() != kJointCount || humanoid.channel_count() != 6 + 3 * (kJointCount - 1)) {
    throw ValidationError("generate_motion expects the humanoid_rig layout");
  }
  const double scale = humanoid.joints()[kLKnee].offset.norm() / 0.44;
  const double facing = style.facing_deg * kPi / 180.0;
  std::vector<std::vector<double>> data;
  data.reserve(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    const double t = static_cast<double>(f) * frame_time;
    const Pose p = pose_at(family, style, t);
    const double yaw = facing + p.yaw * kPi / 180.0;
    // body-frame offset rotated by facing; body forward is +z
    const Eigen::Vector3d off = p.root_offset;
    const double wx = std::cos(yaw) * off.x() + std::sin(yaw) * off.z();
    const double wz = -std::sin(yaw) * off.x() + std::cos(yaw) * off.z();
    std::vector<double> frame;
    frame.reserve(humanoid.channel_count());
    frame.push_back(scale * wx);
    frame.push_back(scale * (kHipHeight + off.y()));
    frame.push_back(scale * wz);
    frame.push_back(yaw * 180.0 / kPi);
    frame.push_back(p.pitch);
    frame.push_back(0.0);
    for (std::size_t jt = 1; jt < kJointCount; ++jt) {
      frame.push_back(p.rot[jt].z);
      frame.push_back(p.rot[jt].x);
      frame.push_back(p.rot[jt].y);
    }
    data.push_back(std::move(frame));
  }
  return MotionSequence(frame_time, std::move(data), humanoid.channel_count());
}

}  // namespace rnktm::mocap
