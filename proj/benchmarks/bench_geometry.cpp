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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "rnktm/convex_hull.hpp"
#include "rnktm/visibility.hpp"

namespace {

std::vector<Eigen::Vector3d> sphere(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Eigen::Vector3d> pts(n);
  for (auto& p : pts) p = Eigen::Vector3d(g(rng), g(rng), g(rng)).normalized();
  return pts;
}

std::vector<Eigen::Vector3d> blob(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Eigen::Vector3d> pts(n);
  for (auto& p : pts) p = Eigen::Vector3d(g(rng), g(rng), g(rng));
  return pts;
}

void BM_ConvexHullGaussian(benchmark::State& state) {
  const auto pts = blob(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(rnktm::geometry::convex_hull_3d(pts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ConvexHullGaussian)->RangeMultiplier(4)->Range(256, 16384);

// every point is a hull vertex
void BM_ConvexHullSphere(benchmark::State& state) {
  const auto pts = sphere(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(rnktm::geometry::convex_hull_3d(pts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ConvexHullSphere)->RangeMultiplier(4)->Range(256, 16384);

void BM_HiddenPointRemoval(benchmark::State& state) {
  const auto pts = sphere(static_cast<std::size_t>(state.range(0)), 3);
  const Eigen::Vector3d cam(0.6, -1.2, 2.6);
  for (auto _ : state) benchmark::DoNotOptimize(rnktm::view::hidden_point_removal(pts, cam, 3.0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_HiddenPointRemoval)->RangeMultiplier(4)->Range(256, 16384);

}  // namespace
