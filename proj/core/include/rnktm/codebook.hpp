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
#include <vector>

#include <Eigen/Core>

namespace rnktm::bof {

struct KMeansOptions {
  std::size_t k = 2000;
  std::uint64_t seed = 0;
  std::size_t max_iter = 100;
  // Stop once (J_prev - J) / J_prev falls below this.
  double rel_tol = 1e-4;
};

// Centroids are the columns of `centroids` (dim x k).
struct Codebook {
  Eigen::MatrixXd centroids;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  // Objective after each assignment step; non-increasing.
  std::vector<double> objective_trace;

  std::size_t k() const { return static_cast<std::size_t>(centroids.cols()); }
  std::size_t dim() const { return static_cast<std::size_t>(centroids.rows()); }
};

struct KMeansResult {
  Codebook codebook;
  // Nearest-centroid index of every training descriptor under the final
  // centroids.
  std::vector<std::size_t> labels;
  double objective = 0.0;
};

// Seeded k-means++ initialisation followed by Lloyd iterations. Columns of
// `descriptors` are samples. Empty clusters are re-seeded with the sample
// farthest from its current centroid.
KMeansResult kmeans_fit(const Eigen::MatrixXd& descriptors, const KMeansOptions& options);

// argmin_c |d - c|^2, lowest index on ties.
std::size_t assign(const Eigen::Ref<const Eigen::VectorXd>& descriptor, const Codebook& codebook);

// Sum over samples of the squared distance to the nearest centroid.
double kmeans_objective(const Eigen::MatrixXd& descriptors, const Eigen::MatrixXd& centroids);

struct BoFHistogram {
  Eigen::VectorXd values;  // L1-normalised codeword frequencies
  std::size_t raw_count = 0;

  bool empty() const { return raw_count == 0; }
};

BoFHistogram encode_video(const Eigen::MatrixXd& descriptors, const Codebook& codebook);

// Layout: "CDBK", u32 version, u32 k, u32 dim, u64 seed, k * dim f32
// (row-major, one centroid per row), then a trailer ("META", u32 length,
// UTF-8 JSON) recording the histogram normalisation and iteration count.
void write_codebook(std::ostream& out, const Codebook& codebook);
Codebook read_codebook(std::istream& in);
void save_codebook(const std::filesystem::path& path, const Codebook& codebook);
Codebook load_codebook(const std::filesystem::path& path);

}  // namespace rnktm::bof
