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
#include <limits>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "rnktm/codebook.hpp"
#include "rnktm/error.hpp"

namespace rnktm::bof {
namespace {

Eigen::MatrixXd gaussian(Eigen::Index dim, Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXd x(dim, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) x(r, c) = g(rng);
  }
  return x;
}

std::size_t scan_nearest(const Eigen::VectorXd& v, const Eigen::MatrixXd& centroids) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Eigen::Index c = 0; c < centroids.cols(); ++c) {
    double d = 0.0;
    for (Eigen::Index r = 0; r < v.size(); ++r) d += (v(r) - centroids(r, c)) * (v(r) - centroids(r, c));
    if (d < best_d) {
      best_d = d;
      best = static_cast<std::size_t>(c);
    }
  }
  return best;
}

Codebook fixed_codebook(Eigen::MatrixXd centroids) {
  Codebook cb;
  cb.centroids = std::move(centroids);
  return cb;
}

TEST(KMeans, TwoPointMasses) {
  Eigen::MatrixXd x(1, 200);
  x.leftCols(100).setZero();
  x.rightCols(100).setConstant(10.0);
  const auto r = kmeans_fit(x, {.k = 2, .seed = 3});
  std::vector<double> c = {r.codebook.centroids(0, 0), r.codebook.centroids(0, 1)};
  std::sort(c.begin(), c.end());
  EXPECT_EQ(c[0], 0.0);
  EXPECT_EQ(c[1], 10.0);
  EXPECT_EQ(r.objective, 0.0);
}

TEST(KMeans, OneCentroidPerDistinctPoint) {
  Eigen::MatrixXd x(2, 12);
  for (int i = 0; i < 12; ++i) x.col(i) = Eigen::Vector2d(i % 4, (i % 4) * (i % 4));
  const auto r = kmeans_fit(x, {.k = 4, .seed = 1});
  EXPECT_EQ(r.objective, 0.0);
}

TEST(KMeans, FinalAssignmentMatchesExhaustiveScan) {
  const auto x = gaussian(6, 1000, 5);
  const auto r = kmeans_fit(x, {.k = 8, .seed = 2});
  ASSERT_EQ(r.labels.size(), 1000u);
  for (Eigen::Index i = 0; i < x.cols(); ++i) {
    EXPECT_EQ(r.labels[static_cast<std::size_t>(i)], scan_nearest(x.col(i), r.codebook.centroids));
  }
  const auto& trace = r.codebook.objective_trace;
  ASSERT_FALSE(trace.empty());
  for (std::size_t i = 1; i < trace.size(); ++i) EXPECT_LE(trace[i], trace[i - 1]);
  EXPECT_NEAR(r.objective, kmeans_objective(x, r.codebook.centroids), 1e-9 * r.objective);
}

TEST(KMeans, DeterministicPerSeed) {
  const auto x = gaussian(4, 300, 8);
  const auto a = kmeans_fit(x, {.k = 10, .seed = 4});
  const auto b = kmeans_fit(x, {.k = 10, .seed = 4});
  EXPECT_EQ(a.codebook.centroids, b.codebook.centroids);
  EXPECT_EQ(a.codebook.objective_trace, b.codebook.objective_trace);
  const auto c = kmeans_fit(x, {.k = 10, .seed = 5});
  EXPECT_NE(a.codebook.centroids, c.codebook.centroids);
}

TEST(KMeans, StopsAtMaxIter) {
  const auto x = gaussian(3, 400, 1);
  const auto r = kmeans_fit(x, {.k = 20, .seed = 1, .max_iter = 2, .rel_tol = 0.0});
  EXPECT_EQ(r.codebook.iterations, 2u);
}

TEST(KMeans, RejectsBadInput) {
  const auto x = gaussian(2, 5, 1);
  EXPECT_THROW(kmeans_fit(x, {.k = 6}), ValidationError);
  EXPECT_THROW(kmeans_fit(x, {.k = 0}), ValidationError);
  auto bad = x;
  bad(1, 2) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(kmeans_fit(bad, {.k = 2}), ValidationError);
}

TEST(Assign, ExactMatchTiesAndOracle) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2, 8);
  for (int i = 0; i < 8; ++i) c.col(i) = Eigen::Vector2d(i, 0);
  c.col(2) = Eigen::Vector2d(0, 1);
  c.col(7) = Eigen::Vector2d(0, -1);
  const auto cb = fixed_codebook(c);
  EXPECT_EQ(assign(c.col(5), cb), 5u);
  Eigen::MatrixXd c2(2, 8);
  for (int i = 0; i < 8; ++i) c2.col(i) = Eigen::Vector2d(50 + i, 50);
  c2.col(2) = Eigen::Vector2d(0, 1);
  c2.col(7) = Eigen::Vector2d(0, -1);
  EXPECT_EQ(assign(Eigen::Vector2d(0, 0), fixed_codebook(c2)), 2u);

  const auto big = gaussian(5, 30, 3);
  const auto probes = gaussian(5, 200, 4);
  const auto cb2 = fixed_codebook(big);
  for (Eigen::Index i = 0; i < probes.cols(); ++i) {
    EXPECT_EQ(assign(probes.col(i), cb2), scan_nearest(probes.col(i), big));
  }
  EXPECT_THROW(assign(Eigen::Vector3d(0, 0, 0), cb), ValidationError);
}

TEST(EncodeVideo, CountsAndNormalises) {
  Eigen::MatrixXd c(1, 3);
  c << 0, 5, 10;
  const auto cb = fixed_codebook(c);
  Eigen::MatrixXd d(1, 3);
  d << 0.1, -0.2, 9.0;
  const auto h = encode_video(d, cb);
  EXPECT_EQ(h.raw_count, 3u);
  EXPECT_NEAR(h.values(0), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(h.values(1), 0.0);
  EXPECT_NEAR(h.values(2), 1.0 / 3.0, 1e-15);
}

TEST(EncodeVideo, DuplicationAndPermutationInvariance) {
  const auto cb = fixed_codebook(gaussian(4, 16, 1));
  const auto d = gaussian(4, 57, 2);
  const auto h = encode_video(d, cb);
  EXPECT_NEAR(h.values.sum(), 1.0, 1e-9);

  Eigen::MatrixXd twice(4, 114);
  twice << d, d;
  EXPECT_LE((encode_video(twice, cb).values - h.values).cwiseAbs().maxCoeff(), 1e-15);

  Eigen::MatrixXd rev = d.rowwise().reverse();
  EXPECT_EQ(encode_video(rev, cb).values, h.values);
}

TEST(EncodeVideo, EmptyInputIsFlagged) {
  const auto cb = fixed_codebook(gaussian(4, 3, 1));
  const auto h = encode_video(Eigen::MatrixXd(4, 0), cb);
  EXPECT_TRUE(h.empty());
  EXPECT_EQ(h.values.size(), 3);
  EXPECT_EQ(h.values.sum(), 0.0);
  EXPECT_THROW(encode_video(Eigen::MatrixXd(5, 2), cb), ValidationError);
}

TEST(CodebookFile, RoundTripAndLayout) {
  auto r = kmeans_fit(gaussian(6, 100, 1), {.k = 5, .seed = 77});
  std::stringstream buf;
  write_codebook(buf, r.codebook);
  const std::string bytes = buf.str();
  EXPECT_EQ(bytes.substr(0, 4), "CDBK");
  const auto back = read_codebook(buf);
  EXPECT_EQ(back.k(), 5u);
  EXPECT_EQ(back.dim(), 6u);
  EXPECT_EQ(back.seed, 77u);
  EXPECT_LE((back.centroids - r.codebook.centroids).cwiseAbs().maxCoeff(), 1e-6);

  std::stringstream cut(bytes.substr(0, 30));
  EXPECT_THROW(read_codebook(cut), FormatError);
}

}  // namespace
}  // namespace rnktm::bof
