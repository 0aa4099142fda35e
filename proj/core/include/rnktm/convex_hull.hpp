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

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace rnktm::geometry {

struct ConvexHull {
  // Indices into the input of the points that are hull vertices, ascending.
  std::vector<std::size_t> vertices;
  // Triangles, counter-clockwise when seen from outside.
  std::vector<std::array<std::size_t, 3>> facets;
};

// Quickhull in double precision. Points within a scale-relative tolerance of
// an existing facet plane are treated as inside, so coplanar points on a hull
// face are not reported as vertices.
//
// Throws ValidationError for fewer than 4 points and NumericalError when the
// input is coincident, collinear or coplanar.
ConvexHull convex_hull_3d(std::span<const Eigen::Vector3d> points);

// Largest signed distance of any point above any facet plane; <= 0 means the
// hull encloses every point. Used by tests to check the hull property.
double max_outside_distance(const ConvexHull& hull, std::span<const Eigen::Vector3d> points);

}  // namespace rnktm::geometry
