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
#include <span>
#include <vector>

#include <Eigen/Core>

namespace rnktm::nktm {

struct Layer {
  Eigen::MatrixXd weights;  // p(q) x p(q-1)
  Eigen::VectorXd bias;     // p(q)
};

// Fully connected ReLU stack with `dims` = {p(0), ..., p(Q)}; layers[q - 1]
// maps p(q-1) -> p(q). The last layer feeds a softmax over p(Q) classes.
struct NetworkParams {
  std::vector<std::size_t> dims;
  std::vector<Layer> layers;

  std::size_t depth() const { return layers.size(); }
  std::size_t input_dim() const { return dims.front(); }
  std::size_t class_count() const { return dims.back(); }
};

// Zero network with the given shape.
NetworkParams zero_params(std::span<const std::size_t> dims);

// Weights ~ N(0, 2 / fan_in), zero biases. Deterministic per seed.
NetworkParams init_params(std::span<const std::size_t> dims, std::uint64_t seed);

// Throws ValidationError if shapes disagree with dims or entries are not finite.
void validate(const NetworkParams& params);

struct ForwardTrace {
  Eigen::VectorXd input;
  std::vector<Eigen::VectorXd> activations;  // h(1) ... h(Q)
  Eigen::VectorXd probabilities;             // softmax(h(Q))
};

// Throws ValidationError on dimension mismatch and NumericalError naming the
// layer if an activation becomes non-finite.
ForwardTrace forward(const NetworkParams& params, const Eigen::VectorXd& x);

// Numerically stable softmax.
Eigen::VectorXd softmax(const Eigen::VectorXd& scores);

enum class SparsityScope {
  kAllLayers,    // q = 1 ... Q
  kHiddenLayers  // q = 1 ... Q - 1
};

struct LossConfig {
  double weight_decay = 0.0005;   // lambda_w
  double sparsity_weight = 0.5;   // lambda_s
  double sparsity_target = 0.05;  // rho
  double clamp_epsilon = 1e-6;    // mean activations are clamped to [eps, 1 - eps]
  SparsityScope sparsity_scope = SparsityScope::kAllLayers;
};

void validate(const LossConfig& config);

// -log p[label]
double cross_entropy(const Eigen::VectorXd& probabilities, std::size_t label);

// Batch estimate of the classification objective: the 1/(2nm) normaliser
// with nm replaced by the batch size, i.e. sum of cross-entropies / (2 B).
double loss_e1(std::span<const ForwardTrace> traces, std::span<const std::size_t> labels);

// Plain mean cross-entropy (reported in training traces).
double mean_cross_entropy(std::span<const ForwardTrace> traces, std::span<const std::size_t> labels);

// Sum over layers of the squared Frobenius norm of the weights (biases excluded).
double penalty_weight_decay(const NetworkParams& params);

// Per-layer mean activation over the batch, h(1) ... h(Q).
std::vector<Eigen::VectorXd> mean_activations(std::span<const ForwardTrace> traces);

// KL(rho || rho_hat) between Bernoulli variables.
double kl_bernoulli(double rho, double rho_hat);

// Sum over the given layers and units of KL(rho || clamp(rho_hat, eps, 1 - eps)).
double penalty_sparsity(std::span<const Eigen::VectorXd> mean_activations, double rho, double eps);

// E2 = E1 + lambda_w J_w + lambda_s J_s with the mean activations taken over
// this batch and restricted to config.sparsity_scope.
double loss_e2(const NetworkParams& params, std::span<const ForwardTrace> traces,
               std::span<const std::size_t> labels, const LossConfig& config);

struct Gradients {
  std::vector<Layer> layers;  // same shapes as NetworkParams::layers
  double e1 = 0.0;
  double e2 = 0.0;
  double mean_cross_entropy = 0.0;
};

// Exact gradient of loss_e2 over the batch (columns of `batch`). The ReLU
// derivative at 0 is taken as 0; clamped mean activations contribute no
// sparsity gradient.
Gradients backward(const NetworkParams& params, const Eigen::MatrixXd& batch,
                   std::span<const std::size_t> labels, const LossConfig& config);

// h(1) ... h(Q-1); the last layer and the softmax are never evaluated.
struct VirtualViews {
  std::vector<Eigen::VectorXd> layers;
};

VirtualViews extract_virtual_views(const NetworkParams& params, const Eigen::VectorXd& x);

}  // namespace rnktm::nktm
