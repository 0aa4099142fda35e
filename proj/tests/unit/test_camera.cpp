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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "rnktm/camera.hpp"
#include "rnktm/error.hpp"

namespace rnktm::view {
namespace {

TEST(ViewGrid, DefaultHemisphereHas108Poses) {
  const auto grid = ViewGrid::hemisphere_default(4.0);
  EXPECT_EQ(grid.azimuths.size(), 18u);
  EXPECT_EQ(grid.zeniths.size(), 6u);
  const auto poses = generate_view_grid(grid);
  ASSERT_EQ(poses.size(), 108u);
  for (const auto& p : poses) {
    EXPECT_NEAR((p.position() - p.look_at).norm(), 4.0, 1e-12);
    const auto f = p.frame();
    EXPECT_LT((f.forward - (p.look_at - p.position()).normalized()).norm(), 1e-12);
  }
}

TEST(ViewGrid, CartesianProductOrder) {
  ViewGrid g;
  g.azimuths = {0, 120};
  g.zeniths = {10, 50, 90};
  const auto poses = generate_view_grid(g);
  ASSERT_EQ(poses.size(), 6u);
  EXPECT_EQ(poses[0].azimuth_deg, 0);
  EXPECT_EQ(poses[2].zenith_deg, 90);
  EXPECT_EQ(poses[3].azimuth_deg, 120);
  EXPECT_EQ(poses[3].zenith_deg, 10);
}

TEST(ViewGrid, SinglePoseOnZenithAxis) {
  ViewGrid g;
  g.azimuths = {0};
  g.zeniths = {0};
  g.radius = 2.5;
  g.look_at = Eigen::Vector3d(1, 1, 0);
  const auto poses = generate_view_grid(g);
  ASSERT_EQ(poses.size(), 1u);
  EXPECT_LT((poses[0].position() - Eigen::Vector3d(1, 1, 2.5)).norm(), 1e-12);
}

TEST(ViewGrid, AzimuthRange) {
  EXPECT_EQ(ViewGrid::azimuth_range(20).size(), 18u);
  EXPECT_EQ(ViewGrid::azimuth_range(360), std::vector<double>{0.0});
  EXPECT_EQ(ViewGrid::azimuth_range(90), (std::vector<double>{0, 90, 180, 270}));
  EXPECT_THROW(ViewGrid::azimuth_range(0), ValidationError);
  EXPECT_THROW(generate_view_grid(ViewGrid{}), ValidationError);
}

TEST(CameraPose, HorizontalQuarterTurn) {
  CameraPose p;
  p.azimuth_deg = 90;
  p.zenith_deg = 90;
  p.radius = 3;
  EXPECT_LT((p.position() - Eigen::Vector3d(0, 3, 0)).norm(), 1e-12);
}

TEST(CameraPose, FramesAreOrthonormal) {
  for (double az : {0.0, 35.0, 200.0, 340.0}) {
    for (double zen : {0.0, 10.0, 45.0, 90.0}) {
      CameraPose p;
      p.azimuth_deg = az;
      p.zenith_deg = zen;
      p.radius = 2;
      const auto f = p.frame();
      Eigen::Matrix3d m;
      m << f.right, f.up, f.forward;
      EXPECT_LT((m.transpose() * m - Eigen::Matrix3d::Identity()).norm(), 1e-12);
    }
  }
}

TEST(CameraPose, WorldUpProjectsUpward) {
  for (double az : {0.0, 90.0, 250.0}) {
    CameraPose p;
    p.azimuth_deg = az;
    p.zenith_deg = 70;
    p.radius = 4;
    EXPECT_GT(p.frame().to_camera(Eigen::Vector3d(0, 0, 1)).y(), 0.0);
  }
}

TEST(CameraPose, ZenithZeroFrameIsTheLimitOfNearbyFrames) {
  for (double az : {0.0, 60.0, 300.0}) {
    CameraPose top;
    top.azimuth_deg = az;
    top.zenith_deg = 0;
    CameraPose near = top;
    near.zenith_deg = 1e-7;
    const auto a = top.frame();
    const auto b = near.frame();
    EXPECT_LT((a.up - b.up).norm(), 1e-6);
    EXPECT_LT((a.right - b.right).norm(), 1e-6);
    EXPECT_LT((a.forward - Eigen::Vector3d(0, 0, -1)).norm(), 1e-12);
  }
}

TEST(CameraPose, ValidateRanges) {
  CameraPose p;
  EXPECT_NO_THROW(validate(p));
  p.zenith_deg = 90.5;
  EXPECT_THROW(validate(p), ValidationError);
  p.zenith_deg = 10;
  p.azimuth_deg = 360;
  EXPECT_THROW(validate(p), ValidationError);
  p.azimuth_deg = 0;
  p.radius = 0;
  EXPECT_THROW(validate(p), ValidationError);
  p.radius = 1;
  p.focal_length = -1;
  EXPECT_THROW(validate(p), ValidationError);
}

}  // namespace
}  // namespace rnktm::view
