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
#include <sstream>

#include <gtest/gtest.h>

#include "rnktm/error.hpp"
#include "rnktm/network_io.hpp"
#include "rnktm/training.hpp"

namespace rnktm::nktm {
namespace {

// Ten "sequences" of four noisy views around a per-sequence histogram.
DummyLabeledSet toy_set(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  DummyLabeledSet set(12, 4);
  for (int s = 0; s < 10; ++s) {
    Eigen::VectorXd base(12);
    for (Eigen::Index i = 0; i < 12; ++i) base(i) = u(rng);
    std::vector<Eigen::VectorXd> views;
    for (int v = 0; v < 4; ++v) {
      Eigen::VectorXd x = base;
      for (Eigen::Index i = 0; i < 12; ++i) x(i) += 0.2 * u(rng);
      views.push_back(x / x.sum());
    }
    set.add_sequence(views);
  }
  return set;
}

const std::vector<std::size_t> kDims = {12, 16, 12, 8, 10};

TEST(DummyLabeledSet, ViewsOfASequenceShareItsLabel) {
  DummyLabeledSet set(3, 2);
  EXPECT_EQ(set.add_sequence({Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 1, 0)}), 0u);
  EXPECT_EQ(set.add_sequence({Eigen::Vector3d(0, 0, 1), Eigen::Vector3d(1, 1, 0)}), 1u);
  EXPECT_EQ(set.labels(), (std::vector<std::size_t>{0, 0, 1, 1}));
  EXPECT_EQ(set.samples().cols(), 4);
  EXPECT_EQ(set.samples().col(2), Eigen::Vector3d(0, 0, 1));
  EXPECT_EQ(set.sequence_count(), 2u);
  EXPECT_THROW(set.add_sequence({Eigen::Vector3d(1, 0, 0)}), ValidationError);
  EXPECT_THROW(set.add_sequence({Eigen::Vector2d(1, 0), Eigen::Vector2d(1, 0)}), ValidationError);
}

TEST(TrainConfig, StepDecaySchedule) {
  TrainConfig c;
  c.epochs = 100;
  EXPECT_DOUBLE_EQ(learning_rate_at(c, 0), 0.01);
  EXPECT_DOUBLE_EQ(learning_rate_at(c, 49), 0.01);
  EXPECT_NEAR(learning_rate_at(c, 50), 0.001, 1e-15);
  EXPECT_NEAR(learning_rate_at(c, 74), 0.001, 1e-15);
  EXPECT_NEAR(learning_rate_at(c, 75), 0.0001, 1e-15);
  EXPECT_NEAR(learning_rate_at(c, 99), 0.0001, 1e-15);
}

TEST(TrainConfig, Validation) {
  TrainConfig c;
  EXPECT_NO_THROW(validate(c));
  c.batch_size = 0;
  EXPECT_THROW(validate(c), ValidationError);
  c = TrainConfig{};
  c.momentum = 1.0;
  EXPECT_THROW(validate(c), ValidationError);
  c = TrainConfig{};
  c.learning_rate = -0.1;
  EXPECT_THROW(validate(c), ValidationError);
  c = TrainConfig{};
  c.loss.sparsity_target = 0.0;
  EXPECT_THROW(validate(c), ValidationError);
}

TEST(Train, ZeroLearningRateLeavesParametersUnchanged) {
  const auto data = toy_set(1);
  TrainConfig c;
  c.learning_rate = 0.0;
  c.epochs = 5;
  c.batch_size = 8;
  const auto init = init_params(kDims, 3);
  const auto r = train(data, init, c);
  for (std::size_t q = 0; q < init.layers.size(); ++q) {
    EXPECT_EQ(r.params.layers[q].weights, init.layers[q].weights);
    EXPECT_EQ(r.params.layers[q].bias, init.layers[q].bias);
  }
  EXPECT_EQ(r.trace.size(), 5u);
}

TEST(Train, DecreasesTheClassificationLoss) {
  const auto data = toy_set(2);
  TrainConfig c;
  c.epochs = 200;
  c.batch_size = 8;
  c.learning_rate = 0.01;
  c.loss.sparsity_weight = 0.005;
  c.loss.sparsity_scope = SparsityScope::kHiddenLayers;
  c.seed = 5;
  const auto init = init_params(kDims, c.seed);
  const auto before = evaluate_loss(init, data, c.loss);
  const auto r = train(data, init, c);
  const auto after = evaluate_loss(r.params, data, c.loss);
  EXPECT_LT(after.e1, before.e1 - 0.05);
  EXPECT_LT(after.e2, before.e2);
  ASSERT_EQ(r.trace.size(), 200u);
  EXPECT_LT(r.trace.back().mean_cross_entropy, r.trace.front().mean_cross_entropy);
}

TEST(Train, BitIdenticalPerSeed) {
  const auto data = toy_set(3);
  TrainConfig c;
  c.epochs = 15;
  c.batch_size = 7;
  c.seed = 11;
  const auto a = train(data, kDims, c);
  const auto b = train(data, kDims, c);
  for (std::size_t q = 0; q < a.params.layers.size(); ++q) {
    EXPECT_EQ(a.params.layers[q].weights, b.params.layers[q].weights);
  }
  c.seed = 12;
  const auto d = train(data, kDims, c);
  EXPECT_NE(a.params.layers[0].weights, d.params.layers[0].weights);
}

TEST(Train, RejectsMismatchedShapes) {
  const auto data = toy_set(4);
  TrainConfig c;
  c.epochs = 1;
  const std::vector<std::size_t> wrong_out = {12, 8, 9};
  EXPECT_THROW(train(data, wrong_out, c), ValidationError);
  const std::vector<std::size_t> wrong_in = {11, 8, 10};
  EXPECT_THROW(train(data, wrong_in, c), ValidationError);
}

TEST(ModelFile, RoundTripIsByteStable) {
  const auto data = toy_set(5);
  TrainConfig c;
  c.epochs = 3;
  c.seed = 9;
  c.loss.sparsity_scope = SparsityScope::kHiddenLayers;
  const auto r = train(data, kDims, c);
  ModelFile m{r.params, training_metadata(c, r.trace)};
  std::stringstream first;
  write_model(first, m);
  const std::string bytes = first.str();
  EXPECT_EQ(bytes.substr(0, 4), "NKTM");
  const auto back = read_model(first);
  EXPECT_EQ(back.params.dims, kDims);
  for (std::size_t q = 0; q < kDims.size() - 1; ++q) {
    EXPECT_LE((back.params.layers[q].weights - r.params.layers[q].weights).cwiseAbs().maxCoeff(), 1e-6);
  }
  std::stringstream second;
  write_model(second, back);
  EXPECT_EQ(second.str(), bytes);

  const auto cfg = config_from_metadata(back.metadata_json);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.epochs, 3u);
  EXPECT_EQ(cfg.loss.sparsity_scope, SparsityScope::kHiddenLayers);
  EXPECT_DOUBLE_EQ(cfg.loss.weight_decay, c.loss.weight_decay);

  std::stringstream cut(bytes.substr(0, bytes.size() / 2));
  EXPECT_THROW(read_model(cut), FormatError);
}

}  // namespace
}  // namespace rnktm::nktm
