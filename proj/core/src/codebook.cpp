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

#include "rnktm/codebook.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <json.hpp>

#include "rnktm/binary_io.hpp"
#include "rnktm/error.hpp"

namespace rnktm::bof {
namespace {

constexpr io::Magic kMagic{'C', 'D', 'B', 'K'};
constexpr io::Magic kMetaMagic{'M', 'E', 'T', 'A'};
constexpr std::uint32_t kVersion = 1;

double sq_dist(const Eigen::Ref<const Eigen::VectorXd>& a, const Eigen::Ref<const Eigen::VectorXd>& b) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// Nearest centroid and its squared distance; lowest index wins ties.
std::pair<std::size_t, double> nearest(const Eigen::Ref<const Eigen::VectorXd>& x,
                                       const Eigen::MatrixXd& centroids) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Eigen::Index c = 0; c < centroids.cols(); ++c) {
    const double d = sq_dist(x, centroids.col(c));
    if (d < best_d) {
      best_d = d;
      best = static_cast<std::size_t>(c);
    }
  }
  return {best, best_d};
}

Eigen::MatrixXd kmeans_pp(const Eigen::MatrixXd& x, std::size_t k, std::mt19937_64& rng) {
  const auto n = x.cols();
  Eigen::MatrixXd centroids(x.rows(), static_cast<Eigen::Index>(k));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto first = static_cast<Eigen::Index>(unit(rng) * static_cast<double>(n));
  first = std::min<Eigen::Index>(first, n - 1);
  centroids.col(0) = x.col(first);
  std::vector<double> d2(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) d2[i] = sq_dist(x.col(i), centroids.col(0));
  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (double v : d2) total += v;
    Eigen::Index pick = 0;
    if (total > 0.0) {
      const double target = unit(rng) * total;
      double acc = 0.0;
      pick = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc > target && d2[i] > 0.0) {
          pick = i;
          break;
        }
      }
    }
    centroids.col(static_cast<Eigen::Index>(c)) = x.col(pick);
    for (Eigen::Index i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], sq_dist(x.col(i), centroids.col(static_cast<Eigen::Index>(c))));
    }
  }
  return centroids;
}

}  // namespace

double kmeans_objective(const Eigen::MatrixXd& descriptors, const Eigen::MatrixXd& centroids) {
  double j = 0.0;
  for (Eigen::Index i = 0; i < descriptors.cols(); ++i) j += nearest(descriptors.col(i), centroids).second;
  return j;
}

KMeansResult kmeans_fit(const Eigen::MatrixXd& x, const KMeansOptions& options) {
  const std::size_t k = options.k;
  const auto n = static_cast<std::size_t>(x.cols());
  if (k < 1) throw ValidationError("k-means needs k >= 1");
  if (n < k) {
    throw ValidationError("k-means needs at least k descriptors (have " + std::to_string(n) +
                          ", k = " + std::to_string(k) + ")");
  }
  if (!x.allFinite()) throw ValidationError("k-means input contains non-finite values");

  std::mt19937_64 rng(options.seed);
  KMeansResult result;
  Codebook& cb = result.codebook;
  cb.seed = options.seed;
  cb.centroids = kmeans_pp(x, k, rng);

  std::vector<std::size_t> labels(n, 0), previous;
  std::vector<double> dist(n, 0.0);
  Eigen::MatrixXd sums(x.rows(), static_cast<Eigen::Index>(k));
  std::vector<std::size_t> counts(k);

  for (std::size_t it = 0; it < std::max<std::size_t>(options.max_iter, 1); ++it) {
    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto [c, d] = nearest(x.col(static_cast<Eigen::Index>(i)), cb.centroids);
      labels[i] = c;
      dist[i] = d;
      objective += d;
    }
    cb.objective_trace.push_back(objective);
    cb.iterations = it + 1;
    const bool unchanged = labels == previous;
    const auto m = cb.objective_trace.size();
    const bool small_gain =
        m >= 2 && cb.objective_trace[m - 2] > 0.0 &&
        (cb.objective_trace[m - 2] - objective) / cb.objective_trace[m - 2] < options.rel_tol;
    if (unchanged || objective == 0.0 || small_gain || it + 1 == options.max_iter) break;
    previous = labels;

    sums.setZero();
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      sums.col(static_cast<Eigen::Index>(labels[i])) += x.col(static_cast<Eigen::Index>(i));
      ++counts[labels[i]];
    }
    std::vector<char> taken(n, 0);
    for (std::size_t c = 0; c < k; ++c) {
      const auto cc = static_cast<Eigen::Index>(c);
      if (counts[c] > 0) {
        cb.centroids.col(cc) = sums.col(cc) / static_cast<double>(counts[c]);
        continue;
      }
      // empty cluster: move it onto the worst-served sample not used yet
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!taken[i] && dist[i] > far_d) {
          far_d = dist[i];
          far = i;
        }
      }
      taken[far] = 1;
      dist[far] = 0.0;
      cb.centroids.col(cc) = x.col(static_cast<Eigen::Index>(far));
    }
  }

  // labels relative to the final centroids
  result.objective = 0.0;
  result.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [c, d] = nearest(x.col(static_cast<Eigen::Index>(i)), cb.centroids);
    result.labels[i] = c;
    result.objective += d;
  }
  return result;
}

std::size_t assign(const Eigen::Ref<const Eigen::VectorXd>& descriptor, const Codebook& codebook) {
  if (static_cast<std::size_t>(descriptor.size()) != codebook.dim()) {
    throw ValidationError("descriptor dimension " + std::to_string(descriptor.size()) +
                          " does not match codebook dimension " + std::to_string(codebook.dim()));
  }
  return nearest(descriptor, codebook.centroids).first;
}

BoFHistogram encode_video(const Eigen::MatrixXd& descriptors, const Codebook& codebook) {
  BoFHistogram h;
  h.values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(codebook.k()));
  if (descriptors.cols() == 0) return h;
  if (static_cast<std::size_t>(descriptors.rows()) != codebook.dim()) {
    throw ValidationError("descriptor dimension " + std::to_string(descriptors.rows()) +
                          " does not match codebook dimension " + std::to_string(codebook.dim()));
  }
  for (Eigen::Index i = 0; i < descriptors.cols(); ++i) {
    h.values[static_cast<Eigen::Index>(nearest(descriptors.col(i), codebook.centroids).first)] += 1.0;
  }
  h.raw_count = static_cast<std::size_t>(descriptors.cols());
  h.values /= static_cast<double>(h.raw_count);
  return h;
}

void write_codebook(std::ostream& out, const Codebook& cb) {
  io::BinaryWriter w(out);
  w.magic(kMagic);
  w.u32(kVersion);
  w.u32(static_cast<std::uint32_t>(cb.k()));
  w.u32(static_cast<std::uint32_t>(cb.dim()));
  w.u64(cb.seed);
  for (Eigen::Index c = 0; c < cb.centroids.cols(); ++c) {
    for (Eigen::Index r = 0; r < cb.centroids.rows(); ++r) w.f32(static_cast<float>(cb.centroids(r, c)));
  }
  nlohmann::json meta = {{"histogram_normalization", "l1"},
                         {"initialization", "kmeans++"},
                         {"iterations", cb.iterations}};
  w.magic(kMetaMagic);
  w.sized_string(meta.dump());
}

Codebook read_codebook(std::istream& in) {
  io::BinaryReader r(in, "codebook");
  r.expect_magic(kMagic);
  if (r.u32() != kVersion) throw FormatError("codebook: unsupported version");
  const auto k = r.u32();
  const auto dim = r.u32();
  if (k == 0 || dim == 0) throw FormatError("codebook: empty dimensions");
  Codebook cb;
  cb.seed = r.u64();
  cb.centroids.resize(dim, k);
  for (Eigen::Index c = 0; c < cb.centroids.cols(); ++c) {
    for (Eigen::Index d = 0; d < cb.centroids.rows(); ++d) cb.centroids(d, c) = r.f32();
  }
  if (!cb.centroids.allFinite()) throw FormatError("codebook: non-finite centroid");
  if (!r.at_end()) {
    r.expect_magic(kMetaMagic);
    try {
      const auto meta = nlohmann::json::parse(r.sized_string(1u << 20));
      cb.iterations = meta.value("iterations", std::size_t{0});
      if (meta.value("histogram_normalization", std::string("l1")) != "l1") {
        throw FormatError("codebook: unsupported histogram normalisation");
      }
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("codebook: bad metadata: ") + e.what());
    }
  }
  return cb;
}

void save_codebook(const std::filesystem::path& path, const Codebook& cb) {
  auto out = io::open_for_write(path);
  write_codebook(out, cb);
  if (!out) throw Error("write failed: " + path.string());
}

Codebook load_codebook(const std::filesystem::path& path) {
  auto in = io::open_for_read(path);
  return read_codebook(in);
}

}  // namespace rnktm::bof
