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

#include "rnktm/convex_hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include <Eigen/Geometry>

#include "rnktm/error.hpp"

namespace rnktm::geometry {
namespace {

using Vec3 = Eigen::Vector3d;
constexpr int kNone = -1;

struct Face {
  std::array<int, 3> v{};
  std::array<int, 3> adj{kNone, kNone, kNone};  // adj[i] shares edge v[i] -> v[i+1]
  Vec3 normal = Vec3::Zero();
  double offset = 0.0;
  std::vector<int> outside;
  int farthest = kNone;
  double farthest_dist = 0.0;
  bool alive = true;
  int visit = 0;
};

class Quickhull {
 public:
  explicit Quickhull(std::span<const Vec3> input) {
    Vec3 lo = input[0], hi = input[0];
    for (const auto& p : input) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    // centre the cloud so plane offsets stay small
    const Vec3 centre = 0.5 * (lo + hi);
    pts_.reserve(input.size());
    for (const auto& p : input) pts_.push_back(p - centre);
    const Vec3 ext = (hi - lo).cwiseAbs();
    const double scale = std::max({ext.x(), ext.y(), ext.z()});
    eps_ = 1e-11 * std::max(scale, std::numeric_limits<double>::min());
  }

  ConvexHull run() {
    build_simplex();
    for (std::size_t f = 0; f < faces_.size(); ++f) {
      if (!faces_[f].alive || faces_[f].outside.empty()) continue;
      // kills f; new faces are appended and picked up later in this loop
      add_point(static_cast<int>(f));
    }
    return collect();
  }

 private:
  double dist(const Face& f, int p) const { return f.normal.dot(pts_[p]) - f.offset; }

  int make_face(int a, int b, int c) {
    Face f;
    f.v = {a, b, c};
    const Vec3 n = (pts_[b] - pts_[a]).cross(pts_[c] - pts_[a]);
    const double len = n.norm();
    if (!(len > 0.0)) throw NumericalError("convex hull: zero-area facet");
    f.normal = n / len;
    f.offset = f.normal.dot((pts_[a] + pts_[b] + pts_[c]) / 3.0);
    faces_.push_back(std::move(f));
    return static_cast<int>(faces_.size()) - 1;
  }

  void build_simplex() {
    const int n = static_cast<int>(pts_.size());
    // extreme points along each axis
    std::array<int, 6> ext{};
    for (int ax = 0; ax < 3; ++ax) {
      int lo = 0, hi = 0;
      for (int i = 1; i < n; ++i) {
        if (pts_[i][ax] < pts_[lo][ax]) lo = i;
        if (pts_[i][ax] > pts_[hi][ax]) hi = i;
      }
      ext[2 * ax] = lo;
      ext[2 * ax + 1] = hi;
    }
    int i0 = ext[0], i1 = ext[1];
    double best = -1.0;
    for (int a = 0; a < 6; ++a) {
      for (int b = a + 1; b < 6; ++b) {
        const double d = (pts_[ext[a]] - pts_[ext[b]]).squaredNorm();
        if (d > best) {
          best = d;
          i0 = ext[a];
          i1 = ext[b];
        }
      }
    }
    if (std::sqrt(best) <= eps_) throw NumericalError("convex hull: points are coincident");

    const Vec3 dir = (pts_[i1] - pts_[i0]).normalized();
    int i2 = kNone;
    best = -1.0;
    for (int i = 0; i < n; ++i) {
      const Vec3 d = pts_[i] - pts_[i0];
      const double off = (d - d.dot(dir) * dir).norm();
      if (off > best) {
        best = off;
        i2 = i;
      }
    }
    if (best <= eps_) throw NumericalError("convex hull: points are collinear");

    const Vec3 pn = (pts_[i1] - pts_[i0]).cross(pts_[i2] - pts_[i0]).normalized();
    int i3 = kNone;
    best = -1.0;
    for (int i = 0; i < n; ++i) {
      const double off = std::abs(pn.dot(pts_[i] - pts_[i0]));
      if (off > best) {
        best = off;
        i3 = i;
      }
    }
    if (best <= eps_) throw NumericalError("convex hull: points are coplanar");

    if (pn.dot(pts_[i3] - pts_[i0]) > 0.0) std::swap(i1, i2);
    // i3 now lies below the (i0, i1, i2) plane
    const std::array<std::array<int, 3>, 4> tris = {{{i0, i1, i2}, {i0, i3, i1}, {i1, i3, i2}, {i2, i3, i0}}};
    for (const auto& t : tris) make_face(t[0], t[1], t[2]);

    std::unordered_map<long long, std::pair<int, int>> edges;
    auto key = [n](int a, int b) { return static_cast<long long>(a) * n + b; };
    for (int f = 0; f < 4; ++f) {
      for (int e = 0; e < 3; ++e) edges[key(faces_[f].v[e], faces_[f].v[(e + 1) % 3])] = {f, e};
    }
    for (int f = 0; f < 4; ++f) {
      for (int e = 0; e < 3; ++e) {
        const auto it = edges.find(key(faces_[f].v[(e + 1) % 3], faces_[f].v[e]));
        if (it == edges.end()) throw NumericalError("convex hull: inconsistent initial simplex");
        faces_[f].adj[e] = it->second.first;
      }
    }

    std::vector<int> candidates;
    candidates.reserve(pts_.size());
    for (int i = 0; i < n; ++i) {
      if (i != i0 && i != i1 && i != i2 && i != i3) candidates.push_back(i);
    }
    assign(candidates, {0, 1, 2, 3});
  }

  void assign(const std::vector<int>& points, const std::vector<int>& targets) {
    for (int p : points) {
      for (int f : targets) {
        const double d = dist(faces_[f], p);
        if (d > eps_) {
          Face& face = faces_[f];
          face.outside.push_back(p);
          if (face.farthest == kNone || d > face.farthest_dist) {
            face.farthest = p;
            face.farthest_dist = d;
          }
          break;
        }
      }
    }
  }

  void add_point(int start) {
    const int eye = faces_[start].farthest;
    ++visit_;

    // Flood the faces visible from the eye.
    std::vector<int> visible{start};
    faces_[start].visit = visit_;
    struct Horizon {
      int a, b, outside_face;
    };
    std::vector<Horizon> horizon;
    for (std::size_t i = 0; i < visible.size(); ++i) {
      const Face& f = faces_[visible[i]];
      for (int e = 0; e < 3; ++e) {
        const int g = f.adj[e];
        if (faces_[g].visit == visit_) continue;
        if (dist(faces_[g], eye) > eps_) {
          faces_[g].visit = visit_;
          visible.push_back(g);
        }
      }
    }
    for (int fi : visible) {
      const Face& f = faces_[fi];
      for (int e = 0; e < 3; ++e) {
        const int g = f.adj[e];
        if (faces_[g].visit != visit_) horizon.push_back({f.v[e], f.v[(e + 1) % 3], g});
      }
    }

    std::vector<int> orphans;
    for (int fi : visible) {
      Face& f = faces_[fi];
      f.alive = false;
      for (int p : f.outside) {
        if (p != eye) orphans.push_back(p);
      }
      f.outside.clear();
      f.outside.shrink_to_fit();
    }

    std::unordered_map<int, int> by_start, by_end;
    std::vector<int> created;
    created.reserve(horizon.size());
    for (const auto& h : horizon) {
      const int nf = make_face(h.a, h.b, eye);
      created.push_back(nf);
      if (!by_start.emplace(h.a, nf).second || !by_end.emplace(h.b, nf).second) {
        throw NumericalError("convex hull: non-manifold horizon (degenerate input)");
      }
      Face& across = faces_[h.outside_face];
      faces_[nf].adj[0] = h.outside_face;
      for (int e = 0; e < 3; ++e) {
        if (across.v[e] == h.b && across.v[(e + 1) % 3] == h.a) across.adj[e] = nf;
      }
    }
    for (int nf : created) {
      Face& f = faces_[nf];
      const auto s = by_start.find(f.v[1]);
      const auto t = by_end.find(f.v[0]);
      if (s == by_start.end() || t == by_end.end()) {
        throw NumericalError("convex hull: open horizon (degenerate input)");
      }
      f.adj[1] = s->second;
      f.adj[2] = t->second;
    }
    assign(orphans, created);
  }

  ConvexHull collect() const {
    ConvexHull hull;
    std::vector<char> used(pts_.size(), 0);
    for (const auto& f : faces_) {
      if (!f.alive) continue;
      hull.facets.push_back({static_cast<std::size_t>(f.v[0]), static_cast<std::size_t>(f.v[1]),
                             static_cast<std::size_t>(f.v[2])});
      for (int v : f.v) used[v] = 1;
    }
    for (std::size_t i = 0; i < used.size(); ++i) {
      if (used[i]) hull.vertices.push_back(i);
    }
    return hull;
  }

  std::vector<Vec3> pts_;
  std::vector<Face> faces_;
  double eps_ = 0.0;
  int visit_ = 0;
};

}  // namespace

ConvexHull convex_hull_3d(std::span<const Eigen::Vector3d> points) {
  if (points.size() < 4) throw ValidationError("convex hull needs at least 4 points");
  for (const auto& p : points) {
    if (!p.allFinite()) throw ValidationError("convex hull input contains non-finite coordinates");
  }
  return Quickhull(points).run();
}

double max_outside_distance(const ConvexHull& hull, std::span<const Eigen::Vector3d> points) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& t : hull.facets) {
    const Eigen::Vector3d& a = points[t[0]];
    const Eigen::Vector3d n = (points[t[1]] - a).cross(points[t[2]] - a).normalized();
    for (const auto& p : points) worst = std::max(worst, n.dot(p - a));
  }
  return worst;
}

}  // namespace rnktm::geometry
