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

#include "rnktm/training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "rnktm/error.hpp"

namespace rnktm::nktm {

void validate(const TrainConfig& c) {
  validate(c.loss);
  if (!(c.learning_rate >= 0.0) || !std::isfinite(c.learning_rate)) {
    throw ValidationError("learning rate must be finite and non-negative");
  }
  if (!(c.momentum >= 0.0 && c.momentum < 1.0)) throw ValidationError("momentum must lie in [0, 1)");
  if (c.batch_size == 0) throw ValidationError("batch size must be at least 1");
  if (!(c.lr_decay_factor > 0.0)) throw ValidationError("learning rate decay factor must be positive");
  for (double f : c.lr_decay_at) {
    if (!(f > 0.0 && f < 1.0)) throw ValidationError("learning rate decay points must lie in (0, 1)");
  }
}

double learning_rate_at(const TrainConfig& c, std::size_t epoch) {
  double lr = c.learning_rate;
  for (double f : c.lr_decay_at) {
    const auto at = static_cast<std::size_t>(std::floor(f * static_cast<double>(c.epochs)));
    if (epoch >= at) lr *= c.lr_decay_factor;
  }
  return lr;
}

DummyLabeledSet::DummyLabeledSet(std::size_t input_dim, std::size_t view_count)
    : input_dim_(input_dim), view_count_(view_count), samples_(static_cast<Eigen::Index>(input_dim), 0) {
  if (input_dim == 0 || view_count == 0) throw ValidationError("dummy set needs positive input dim and view count");
}

std::size_t DummyLabeledSet::add_sequence(const std::vector<Eigen::VectorXd>& views) {
  if (views.size() != view_count_) {
    throw ValidationError("sequence has " + std::to_string(views.size()) + " views, expected " +
                          std::to_string(view_count_));
  }
  const std::size_t label = sequences_;
  const Eigen::Index start = samples_.cols();
  samples_.conservativeResize(Eigen::NoChange, start + static_cast<Eigen::Index>(views.size()));
  for (std::size_t v = 0; v < views.size(); ++v) {
    if (views[v].size() != static_cast<Eigen::Index>(input_dim_)) {
      throw ValidationError("view " + std::to_string(v) + " has wrong dimension");
    }
    samples_.col(start + static_cast<Eigen::Index>(v)) = views[v];
    labels_.push_back(label);
  }
  ++sequences_;
  return label;
}

DatasetLoss evaluate_loss(const NetworkParams& params, const DummyLabeledSet& data, const LossConfig& config) {
  const Gradients g = backward(params, data.samples(), data.labels(), config);
  return {g.e1, g.e2, g.mean_cross_entropy};
}

TrainResult train(const DummyLabeledSet& data, NetworkParams params, const TrainConfig& config) {
  validate(config);
  validate(params);
  if (data.sequence_count() < 2) throw ValidationError("training needs at least 2 sequences");
  if (params.class_count() != data.sequence_count()) {
    throw ValidationError("output width " + std::to_string(params.class_count()) + " does not match " +
                          std::to_string(data.sequence_count()) + " sequences");
  }
  if (params.input_dim() != data.input_dim()) throw ValidationError("input width does not match the dataset");

  std::vector<Layer> velocity;
  for (const auto& l : params.layers) {
    velocity.push_back({Eigen::MatrixXd::Zero(l.weights.rows(), l.weights.cols()),
                        Eigen::VectorXd::Zero(l.bias.size())});
  }

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(config.seed ^ 0x5d1c0a7b3e29f481ULL);

  TrainResult result;
  Eigen::MatrixXd batch;
  std::vector<std::size_t> labels;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    const double lr = learning_rate_at(config, epoch);
    double e2_sum = 0.0;
    double ce_sum = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      batch.resize(static_cast<Eigen::Index>(data.input_dim()), static_cast<Eigen::Index>(end - start));
      labels.clear();
      for (std::size_t i = start; i < end; ++i) {
        batch.col(static_cast<Eigen::Index>(i - start)) = data.samples().col(static_cast<Eigen::Index>(order[i]));
        labels.push_back(data.labels()[order[i]]);
      }
      Gradients g;
      try {
        g = backward(params, batch, labels, config.loss);
      } catch (const NumericalError& e) {
        throw NumericalError("training diverged at epoch " + std::to_string(epoch) + ", batch " +
                             std::to_string(batches) + ": " + e.what());
      }
      if (!std::isfinite(g.e2)) {
        throw NumericalError("training diverged at epoch " + std::to_string(epoch) + ", batch " +
                             std::to_string(batches) + ": non-finite loss");
      }
      for (std::size_t q = 0; q < params.layers.size(); ++q) {
        velocity[q].weights = config.momentum * velocity[q].weights - lr * g.layers[q].weights;
        velocity[q].bias = config.momentum * velocity[q].bias - lr * g.layers[q].bias;
        params.layers[q].weights += velocity[q].weights;
        params.layers[q].bias += velocity[q].bias;
      }
      e2_sum += g.e2;
      ce_sum += g.mean_cross_entropy * static_cast<double>(end - start);
      ++batches;
    }
    result.trace.push_back({epoch, lr, e2_sum / static_cast<double>(batches),
                            ce_sum / static_cast<double>(order.size())});
  }
  result.params = std::move(params);
  return result;
}

TrainResult train(const DummyLabeledSet& data, const std::vector<std::size_t>& dims, const TrainConfig& config) {
  return train(data, init_params(dims, config.seed), config);
}

}  // namespace rnktm::nktm
