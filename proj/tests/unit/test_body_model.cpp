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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include "rnktm/body_model.hpp"
#include "rnktm/error.hpp"
#include "rnktm/point_cloud.hpp"
#include "rnktm/procedural_motion.hpp"

namespace rnktm::mocap {
namespace {

// One root joint with full channels and a single bone of length 1 along +Y.
SkeletonRig stick_rig() {
  Joint root{"root", std::nullopt, Eigen::Vector3d::Zero(),
             {Channel::kXposition, Channel::kYposition, Channel::kZposition, Channel::kZrotation,
              Channel::kXrotation, Channel::kYrotation}};
  return SkeletonRig({root}, {EndSite{0, Eigen::Vector3d(0, 1, 0)}});
}

double axis_distance(const CapsuleSegment& s, const Eigen::Vector3d& p) {
  const Eigen::Vector3d d = s.end - s.start;
  const double t = std::clamp((p - s.start).dot(d) / d.squaredNorm(), 0.0, 1.0);
  return (p - (s.start + t * d)).norm();
}

TEST(SampleCapsule, CountMatchesDensityTimesArea) {
  for (double r : {0.05, 0.1, 0.3}) {
    for (double len : {0.2, 1.0}) {
      CapsuleSegment s{0, Eigen::Vector3d::Zero(), Eigen::Vector3d(0, len, 0), r, 800.0};
      const double expected = 800.0 * 2.0 * std::numbers::pi * r * (2.0 * r + len);
      const auto samples = sample_capsule(s, 0, 3);
      EXPECT_NEAR(static_cast<double>(samples.size()), expected, 0.1 * expected);
    }
  }
}

TEST(SampleCapsule, PointsLieOnSurfaceWithOutwardUnitNormals) {
  CapsuleSegment s{0, Eigen::Vector3d(0.1, 0, 0), Eigen::Vector3d(0.1, 0.8, 0.3), 0.12, 2000.0};
  const auto samples = sample_capsule(s, 100, 5);
  ASSERT_FALSE(samples.empty());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& p = samples[i];
    EXPECT_EQ(p.point_id, 100 + i);
    EXPECT_NEAR(p.local_normal.norm(), 1.0, 1e-12);
    EXPECT_NEAR(axis_distance(s, p.local_position), s.radius, 1e-9);
    const Eigen::Vector3d outward = p.local_position - p.local_normal * s.radius;
    EXPECT_NEAR(axis_distance(s, outward), 0.0, 1e-9);
  }
}

TEST(SampleCapsule, RejectsBadParameters) {
  CapsuleSegment s{0, Eigen::Vector3d::Zero(), Eigen::Vector3d::UnitY(), 0.0, 10.0};
  EXPECT_THROW(sample_capsule(s, 0, 1), ValidationError);
  s.radius = 0.1;
  s.density = 0.0;
  EXPECT_THROW(sample_capsule(s, 0, 1), ValidationError);
}

TEST(BuildBodyModel, DeterministicWithUniqueIds) {
  const auto rig = humanoid_rig();
  const auto shape = humanoid_body_shape(2, 0.5);
  const auto a = build_body_model(rig, shape, 300.0, 7);
  const auto b = build_body_model(rig, shape, 300.0, 7);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  std::set<std::uint64_t> ids;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].point_id, b.samples[i].point_id);
    EXPECT_EQ(a.samples[i].local_position, b.samples[i].local_position);
    ids.insert(a.samples[i].point_id);
  }
  EXPECT_EQ(ids.size(), a.samples.size());
  const auto c = build_body_model(rig, shape, 300.0, 8);
  EXPECT_NE(a.samples.front().local_position, c.samples.front().local_position);
}

TEST(BuildBodyModel, OneCapsulePerBone) {
  const auto rig = humanoid_rig();
  const auto model = build_body_model(rig, humanoid_body_shape(0), 100.0, 1);
  EXPECT_EQ(model.segments.size(), rig.joint_count() - 1 + rig.end_sites().size());
  double expected = 0.0;
  for (const auto& s : model.segments) expected += 100.0 * s.surface_area();
  EXPECT_NEAR(static_cast<double>(model.samples.size()), expected, 0.1 * expected);
}

TEST(BuildBodyModel, RejectsDegenerateBone) {
  Joint root{"root", std::nullopt, Eigen::Vector3d::Zero(),
             {Channel::kXrotation, Channel::kYrotation, Channel::kZrotation}};
  const SkeletonRig rig({root}, {EndSite{0, Eigen::Vector3d::Zero()}});
  EXPECT_THROW(build_body_model(rig, BodyShape{}, 10.0, 1), ValidationError);
  BodyShape fat;
  fat.min_radius = 0.1;
  EXPECT_NO_THROW(build_body_model(rig, fat, 10.0, 1));
}

class AnimateStick : public ::testing::Test {
 protected:
  SkeletonRig rig = stick_rig();
  CapsuleBodyModel model = build_body_model(rig, BodyShape{}, 2000.0, 4);

  PointCloudSequence run(std::vector<std::vector<double>> frames) {
    return animate(model, rig, MotionSequence(0.1, std::move(frames), 6));
  }
};

TEST_F(AnimateStick, IdentityFrameKeepsLocalPositions) {
  const auto seq = run({{0, 0, 0, 0, 0, 0}});
  for (std::size_t i = 0; i < model.samples.size(); ++i) {
    EXPECT_EQ(seq.frames[0].positions[i], model.samples[i].local_position);
    EXPECT_EQ(seq.frames[0].point_ids[i], model.samples[i].point_id);
  }
}

TEST_F(AnimateStick, RootTranslationShiftsEveryPoint) {
  const auto seq = run({{1, -2, 0.5, 0, 0, 0}});
  for (std::size_t i = 0; i < model.samples.size(); ++i) {
    const Eigen::Vector3d d = seq.frames[0].positions[i] - model.samples[i].local_position;
    EXPECT_LT((d - Eigen::Vector3d(1, -2, 0.5)).norm(), 1e-12);
    EXPECT_LT((seq.frames[0].normals[i] - model.samples[i].local_normal).norm(), 1e-12);
  }
}

TEST_F(AnimateStick, QuarterTurnAboutZ) {
  const auto seq = run({{0, 0, 0, 90, 0, 0}});
  for (std::size_t i = 0; i < model.samples.size(); ++i) {
    const auto& l = model.samples[i].local_position;
    const Eigen::Vector3d expected(-l.y(), l.x(), l.z());
    EXPECT_LT((seq.frames[0].positions[i] - expected).norm(), 1e-12);
  }
}

TEST(Animate, RigidBonesPreserveDistances) {
  const auto rig = humanoid_rig();
  const auto model = build_body_model(rig, humanoid_body_shape(1), 200.0, 1);
  const auto motion = generate_motion(rig, MotionFamily::kPunch, random_style(MotionFamily::kPunch, 1), 5);
  const auto seq = animate(model, rig, motion);
  ASSERT_EQ(seq.frame_count(), 5u);
  for (std::size_t i = 0; i + 1 < model.samples.size(); ++i) {
    if (model.samples[i].bone != model.samples[i + 1].bone) continue;
    const double d0 = (seq.frames[0].positions[i] - seq.frames[0].positions[i + 1]).norm();
    for (std::size_t f = 1; f < 5; ++f) {
      const double df = (seq.frames[f].positions[i] - seq.frames[f].positions[i + 1]).norm();
      EXPECT_NEAR(df, d0, 1e-9);
    }
  }
  EXPECT_NO_THROW(validate(seq));
}

TEST(Animate, RejectsForeignRig) {
  const auto model = build_body_model(humanoid_rig(), humanoid_body_shape(1), 50.0, 1);
  const auto rig = stick_rig();
  EXPECT_THROW(animate(model, rig, MotionSequence(0.1, {{0, 0, 0, 0, 0, 0}}, 6)), ValidationError);
}

PointCloudSequence tiny_sequence() {
  PointCloudSequence seq;
  seq.frame_time = 0.05;
  for (int f = 0; f < 3; ++f) {
    PointCloudFrame fr;
    for (int i = 0; i < 4; ++i) {
      fr.positions.emplace_back(i + 0.25 * f, -i, 0.5 * i * f);
      fr.normals.push_back(Eigen::Vector3d(i, 1, f).normalized());
      fr.point_ids.push_back(10 + i);
    }
    seq.frames.push_back(fr);
  }
  return seq;
}

}  // namespace
}  // namespace rnktm::mocap

namespace rnktm {
namespace {

TEST(PointCloudSequence, YUpToZUpRotatesPositionsAndNormals) {
  const auto seq = mocap::tiny_sequence();
  const auto z = y_up_to_z_up(seq);
  for (std::size_t f = 0; f < seq.frame_count(); ++f) {
    for (std::size_t i = 0; i < seq.point_count(); ++i) {
      const auto& p = seq.frames[f].positions[i];
      const auto& n = seq.frames[f].normals[i];
      EXPECT_EQ(z.frames[f].positions[i], Eigen::Vector3d(p.x(), -p.z(), p.y()));
      EXPECT_EQ(z.frames[f].normals[i], Eigen::Vector3d(n.x(), -n.z(), n.y()));
    }
  }
}

TEST(PointCloudSequence, BoundingSphereContainsEveryPoint) {
  const auto seq = mocap::tiny_sequence();
  const auto s = bounding_sphere(seq);
  for (const auto& fr : seq.frames) {
    for (const auto& p : fr.positions) EXPECT_LE((p - s.center).norm(), s.radius + 1e-12);
  }
}

TEST(PointCloudSequence, BinaryRoundTrip) {
  const auto seq = mocap::tiny_sequence();
  std::stringstream buf;
  write_point_cloud_sequence(buf, seq);
  const auto back = read_point_cloud_sequence(buf);
  EXPECT_EQ(back.frame_time, seq.frame_time);
  ASSERT_EQ(back.frame_count(), seq.frame_count());
  for (std::size_t f = 0; f < seq.frame_count(); ++f) {
    EXPECT_EQ(back.frames[f].point_ids, seq.frames[f].point_ids);
    for (std::size_t i = 0; i < seq.point_count(); ++i) {
      EXPECT_LT((back.frames[f].positions[i] - seq.frames[f].positions[i]).norm(), 1e-6);
      EXPECT_LT((back.frames[f].normals[i] - seq.frames[f].normals[i]).norm(), 1e-6);
    }
  }
}

TEST(PointCloudSequence, TruncatedStreamRejected) {
  std::stringstream buf;
  write_point_cloud_sequence(buf, mocap::tiny_sequence());
  std::string bytes = buf.str();
  bytes.resize(bytes.size() - 5);
  std::stringstream cut(bytes);
  EXPECT_THROW(read_point_cloud_sequence(cut), FormatError);
}

TEST(PointCloudSequence, ValidateRejectsNonUnitNormal) {
  auto seq = mocap::tiny_sequence();
  seq.frames[1].normals[2] *= 2.0;
  EXPECT_THROW(validate(seq), ValidationError);
}

}  // namespace
}  // namespace rnktm
