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

#include "rnktm/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <json.hpp>

#include "rnktm/binary_io.hpp"
#include "rnktm/error.hpp"

namespace rnktm::svm {
namespace {

constexpr io::Magic kMagic{'L', 'S', 'V', 'M'};
constexpr io::Magic kMetaMagic{'M', 'E', 'T', 'A'};
constexpr std::uint32_t kVersion = 1;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Binary {
  Eigen::VectorXd w;
  double b = 0.0;
};

Binary train_binary(const Eigen::MatrixXd& x, const std::vector<double>& y, const SvmConfig& cfg,
                    std::uint64_t seed) {
  const auto n = x.cols();
  const double upper = cfg.C / static_cast<double>(n);
  Eigen::VectorXd diag(n);
  for (Eigen::Index i = 0; i < n; ++i) diag[i] = x.col(i).squaredNorm() + 1.0;

  Binary m{Eigen::VectorXd::Zero(x.rows()), 0.0};
  std::vector<double> alpha(static_cast<std::size_t>(n), 0.0);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double pg_max = -std::numeric_limits<double>::infinity();
    double pg_min = std::numeric_limits<double>::infinity();
    for (auto i : order) {
      const auto si = static_cast<std::size_t>(i);
      const double g = y[si] * (m.w.dot(x.col(i)) + m.b) - 1.0;
      double pg = g;
      if (alpha[si] <= 0.0) {
        pg = std::min(g, 0.0);
      } else if (alpha[si] >= upper) {
        pg = std::max(g, 0.0);
      }
      pg_max = std::max(pg_max, pg);
      pg_min = std::min(pg_min, pg);
      if (pg == 0.0) continue;
      const double a = std::clamp(alpha[si] - g / diag[i], 0.0, upper);
      const double delta = (a - alpha[si]) * y[si];
      alpha[si] = a;
      m.w += delta * x.col(i);
      m.b += delta;
    }
    if (pg_max - pg_min < cfg.tolerance) break;
  }
  return m;
}

}  // namespace

LabeledDescriptorSet::LabeledDescriptorSet(std::vector<std::string> classes) : classes_(std::move(classes)) {
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (classes_[i] == classes_[j]) throw ValidationError("duplicate class label '" + classes_[i] + "'");
    }
  }
}

std::size_t LabeledDescriptorSet::class_index(const std::string& label) const {
  auto it = std::find(classes_.begin(), classes_.end(), label);
  if (it == classes_.end()) throw ValidationError("label '" + label + "' is not in the declared label set");
  return static_cast<std::size_t>(it - classes_.begin());
}

void LabeledDescriptorSet::add(const Eigen::VectorXd& d, const std::string& label, std::string view,
                               std::string sample_id) {
  const auto c = class_index(label);
  if (labels_.empty()) {
    if (d.size() == 0) throw ValidationError("empty descriptor");
    dim_ = static_cast<std::size_t>(d.size());
    descriptors_.resize(d.size(), 0);
  } else if (static_cast<std::size_t>(d.size()) != dim_) {
    throw ValidationError("descriptor dimension " + std::to_string(d.size()) + " differs from " +
                          std::to_string(dim_));
  }
  if (!d.allFinite()) throw ValidationError("descriptor has non-finite entries");
  descriptors_.conservativeResize(Eigen::NoChange, descriptors_.cols() + 1);
  descriptors_.col(descriptors_.cols() - 1) = d;
  labels_.push_back(c);
  views_.push_back(std::move(view));
  ids_.push_back(std::move(sample_id));
}

LinearSvmModel svm_train(const LabeledDescriptorSet& set, const SvmConfig& config) {
  if (!(config.C > 0.0)) throw ValidationError("C must be positive");
  if (set.classes().size() < 2) throw ValidationError("SVM training needs at least 2 classes");
  std::vector<std::size_t> counts(set.classes().size(), 0);
  for (auto l : set.labels()) ++counts[l];
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] == 0) throw ValidationError("class '" + set.classes()[c] + "' has no training samples");
  }

  LinearSvmModel model;
  model.classes = set.classes();
  model.C = config.C;
  model.seed = config.seed;
  model.weights.resize(static_cast<Eigen::Index>(set.dim()), static_cast<Eigen::Index>(counts.size()));
  model.bias.resize(static_cast<Eigen::Index>(counts.size()));
  std::vector<double> y(set.size());
  for (std::size_t c = 0; c < counts.size(); ++c) {
    for (std::size_t i = 0; i < set.size(); ++i) y[i] = set.labels()[i] == c ? 1.0 : -1.0;
    const Binary b = train_binary(set.descriptors(), y, config, splitmix(config.seed + c));
    model.weights.col(static_cast<Eigen::Index>(c)) = b.w;
    model.bias[static_cast<Eigen::Index>(c)] = b.b;
  }
  return model;
}

std::size_t argmax_first(const Eigen::VectorXd& scores) {
  std::size_t best = 0;
  for (Eigen::Index i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[static_cast<Eigen::Index>(best)]) best = static_cast<std::size_t>(i);
  }
  return best;
}

Prediction svm_predict(const LinearSvmModel& model, const Eigen::VectorXd& d) {
  if (d.size() != model.weights.rows()) {
    throw ValidationError("descriptor dimension " + std::to_string(d.size()) + " does not match model dimension " +
                          std::to_string(model.weights.rows()));
  }
  Prediction p;
  p.scores = model.weights.transpose() * d + model.bias;
  p.label = argmax_first(p.scores);
  return p;
}

void write_svm(std::ostream& out, const LinearSvmModel& m) {
  io::BinaryWriter w(out);
  w.magic(kMagic);
  w.u32(kVersion);
  w.u32(static_cast<std::uint32_t>(m.classes.size()));
  w.u32(static_cast<std::uint32_t>(m.dim()));
  for (const auto& c : m.classes) w.sized_string(c);
  for (Eigen::Index c = 0; c < m.weights.cols(); ++c) {
    for (Eigen::Index d = 0; d < m.weights.rows(); ++d) w.f32(static_cast<float>(m.weights(d, c)));
    w.f32(static_cast<float>(m.bias[c]));
  }
  nlohmann::json meta = {{"C", m.C}, {"seed", m.seed}, {"solver", "dual coordinate descent, one-vs-rest"}};
  w.magic(kMetaMagic);
  w.sized_string(meta.dump());
}

LinearSvmModel read_svm(std::istream& in) {
  io::BinaryReader r(in, "svm model");
  r.expect_magic(kMagic);
  if (r.u32() != kVersion) throw FormatError("svm model: unsupported version");
  const auto classes = r.u32();
  const auto dim = r.u32();
  if (classes < 2 || dim == 0) throw FormatError("svm model: bad shape");
  LinearSvmModel m;
  for (std::uint32_t c = 0; c < classes; ++c) m.classes.push_back(r.sized_string(1u << 16));
  m.weights.resize(dim, classes);
  m.bias.resize(classes);
  for (Eigen::Index c = 0; c < m.weights.cols(); ++c) {
    for (Eigen::Index d = 0; d < m.weights.rows(); ++d) m.weights(d, c) = r.f32();
    m.bias[c] = r.f32();
  }
  if (!m.weights.allFinite() || !m.bias.allFinite()) throw FormatError("svm model: non-finite parameter");
  if (!r.at_end()) {
    r.expect_magic(kMetaMagic);
    try {
      const auto meta = nlohmann::json::parse(r.sized_string(1u << 20));
      m.C = meta.value("C", 1.0);
      m.seed = meta.value("seed", std::uint64_t{0});
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("svm model: bad metadata: ") + e.what());
    }
  }
  return m;
}

void save_svm(const std::filesystem::path& path, const LinearSvmModel& m) {
  auto out = io::open_for_write(path);
  write_svm(out, m);
  if (!out) throw Error("write failed: " + path.string());
}

LinearSvmModel load_svm(const std::filesystem::path& path) {
  auto in = io::open_for_read(path);
  return read_svm(in);
}

}  // namespace rnktm::svm
