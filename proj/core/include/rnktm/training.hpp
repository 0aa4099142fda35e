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
#include <vector>

#include <Eigen/Core>

#include "rnktm/network.hpp"

namespace rnktm::nktm {

struct TrainConfig {
  double learning_rate = 0.01;
  double momentum = 0.9;
  LossConfig loss;
  std::size_t batch_size = 64;
  std::size_t epochs = 100;
  std::uint64_t seed = 0;
  // learning rate is multiplied by lr_decay_factor at each listed fraction of the epochs
  std::vector<double> lr_decay_at = {0.5, 0.75};
  double lr_decay_factor = 0.1;
};

void validate(const TrainConfig& config);

// Learning rate in effect during `epoch` (0-based).
double learning_rate_at(const TrainConfig& config, std::size_t epoch);

// Every view of mocap sequence j carries the dummy label j (0-based).
class DummyLabeledSet {
 public:
  DummyLabeledSet(std::size_t input_dim, std::size_t view_count);

  // Appends all views of one sequence; returns its label.
  std::size_t add_sequence(const std::vector<Eigen::VectorXd>& views);

  std::size_t input_dim() const { return input_dim_; }
  std::size_t view_count() const { return view_count_; }
  std::size_t sequence_count() const { return sequences_; }
  std::size_t size() const { return labels_.size(); }

  const Eigen::MatrixXd& samples() const { return samples_; }  // input_dim x size
  const std::vector<std::size_t>& labels() const { return labels_; }

 private:
  std::size_t input_dim_;
  std::size_t view_count_;
  std::size_t sequences_ = 0;
  Eigen::MatrixXd samples_;
  std::vector<std::size_t> labels_;
};

struct EpochStats {
  std::size_t epoch = 0;
  double learning_rate = 0.0;
  double e2 = 0.0;                  // mean batch E2
  double mean_cross_entropy = 0.0;  // mean per-sample cross-entropy
};

struct TrainResult {
  NetworkParams params;
  std::vector<EpochStats> trace;
};

// Full-dataset losses in a single batch.
struct DatasetLoss {
  double e1 = 0.0;
  double e2 = 0.0;
  double mean_cross_entropy = 0.0;
};

DatasetLoss evaluate_loss(const NetworkParams& params, const DummyLabeledSet& data, const LossConfig& config);

// Momentum SGD (v <- mu v - lr g, theta <- theta + v) over seeded per-epoch
// shuffles. Throws NumericalError naming the epoch and batch if the loss
// becomes non-finite.
TrainResult train(const DummyLabeledSet& data, NetworkParams init, const TrainConfig& config);

// Initialises with init_params(dims, config.seed) first.
TrainResult train(const DummyLabeledSet& data, const std::vector<std::size_t>& dims, const TrainConfig& config);

}  // namespace rnktm::nktm
