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
#include <string>
#include <vector>

#include <Eigen/Core>

namespace rnktm::svm {

// Descriptors with action labels drawn from a declared label set, plus the
// view and sample id each came from.
class LabeledDescriptorSet {
 public:
  explicit LabeledDescriptorSet(std::vector<std::string> classes);

  void add(const Eigen::VectorXd& descriptor, const std::string& label, std::string view = {},
           std::string sample_id = {});

  const std::vector<std::string>& classes() const { return classes_; }
  std::size_t size() const { return labels_.size(); }
  std::size_t dim() const { return dim_; }
  const Eigen::MatrixXd& descriptors() const { return descriptors_; }  // dim x size
  const std::vector<std::size_t>& labels() const { return labels_; }   // indices into classes()
  const std::vector<std::string>& views() const { return views_; }
  const std::vector<std::string>& sample_ids() const { return ids_; }
  std::size_t class_index(const std::string& label) const;

 private:
  std::vector<std::string> classes_;
  std::size_t dim_ = 0;
  Eigen::MatrixXd descriptors_;
  std::vector<std::size_t> labels_;
  std::vector<std::string> views_;
  std::vector<std::string> ids_;
};

struct SvmConfig {
  double C = 1.0;
  std::size_t epochs = 100;  // maximum passes over the data per class
  double tolerance = 1e-6;   // stop once the projected-gradient spread drops below this
  std::uint64_t seed = 0;
};

struct LinearSvmModel {
  std::vector<std::string> classes;
  Eigen::MatrixXd weights;  // dim x classes
  Eigen::VectorXd bias;     // classes
  double C = 1.0;
  std::uint64_t seed = 0;

  std::size_t dim() const { return static_cast<std::size_t>(weights.rows()); }
};

// One-vs-rest linear SVM. Each binary problem minimises
//   0.5 (|w|^2 + b^2) + (C / N) sum_i max(0, 1 - y_i (w.x_i + b))
// by dual coordinate descent over a seeded permutation. The bias is learned
// as the weight of a constant feature.
LinearSvmModel svm_train(const LabeledDescriptorSet& set, const SvmConfig& config);

struct Prediction {
  std::size_t label = 0;  // index into model.classes
  Eigen::VectorXd scores;
};

// argmax of w_c.d + b_c; ties resolve to the earliest class.
Prediction svm_predict(const LinearSvmModel& model, const Eigen::VectorXd& descriptor);

// First index of the maximum score.
std::size_t argmax_first(const Eigen::VectorXd& scores);

void write_svm(std::ostream& out, const LinearSvmModel& model);
LinearSvmModel read_svm(std::istream& in);
void save_svm(const std::filesystem::path& path, const LinearSvmModel& model);
LinearSvmModel load_svm(const std::filesystem::path& path);

}  // namespace rnktm::svm
