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

#include "rnktm/network.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rnktm/error.hpp"

namespace rnktm::nktm {
namespace {

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

void check_dims(std::span<const std::size_t> dims) {
  if (dims.size() < 2) throw ValidationError("network needs at least an input and an output width");
  for (auto d : dims) {
    if (d < 1) throw ValidationError("layer widths must be at least 1");
  }
}

void check_input(const NetworkParams& params, Eigen::Index size) {
  if (params.layers.empty()) throw ValidationError("network has no layers");
  if (size != idx(params.input_dim())) {
    throw ValidationError("input dimension " + std::to_string(size) + " does not match p(0) = " +
                          std::to_string(params.input_dim()));
  }
}

bool in_scope(std::size_t layer, std::size_t depth, SparsityScope scope) {
  // layer is 1-based
  return scope == SparsityScope::kAllLayers || layer < depth;
}

// d/d(rho_hat) of KL(rho || rho_hat); zero when rho_hat is clamped.
double kl_slope(double rho, double rho_hat, double eps) {
  if (rho_hat <= eps || rho_hat >= 1.0 - eps) return 0.0;
  return -rho / rho_hat + (1.0 - rho) / (1.0 - rho_hat);
}

}  // namespace

NetworkParams zero_params(std::span<const std::size_t> dims) {
  check_dims(dims);
  NetworkParams p;
  p.dims.assign(dims.begin(), dims.end());
  for (std::size_t q = 1; q < dims.size(); ++q) {
    p.layers.push_back({Eigen::MatrixXd::Zero(idx(dims[q]), idx(dims[q - 1])),
                        Eigen::VectorXd::Zero(idx(dims[q]))});
  }
  return p;
}

NetworkParams init_params(std::span<const std::size_t> dims, std::uint64_t seed) {
  NetworkParams p = zero_params(dims);
  std::mt19937_64 rng(seed);
  for (std::size_t q = 0; q < p.layers.size(); ++q) {
    std::normal_distribution<double> normal(0.0, std::sqrt(2.0 / static_cast<double>(dims[q])));
    auto& w = p.layers[q].weights;
    // fixed row-major fill order keeps the draw sequence independent of storage order
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = normal(rng);
    }
  }
  return p;
}

void validate(const NetworkParams& params) {
  check_dims(params.dims);
  if (params.layers.size() + 1 != params.dims.size()) {
    throw ValidationError("layer count does not match dims");
  }
  for (std::size_t q = 0; q < params.layers.size(); ++q) {
    const auto& l = params.layers[q];
    if (l.weights.rows() != idx(params.dims[q + 1]) || l.weights.cols() != idx(params.dims[q]) ||
        l.bias.size() != idx(params.dims[q + 1])) {
      throw ValidationError("layer " + std::to_string(q + 1) + " has inconsistent shape");
    }
    if (!l.weights.allFinite() || !l.bias.allFinite()) {
      throw ValidationError("layer " + std::to_string(q + 1) + " has non-finite parameters");
    }
  }
}

void validate(const LossConfig& c) {
  if (!(c.sparsity_target > 0.0 && c.sparsity_target < 1.0)) {
    throw ValidationError("sparsity target must lie in (0, 1)");
  }
  if (!(c.weight_decay >= 0.0) || !(c.sparsity_weight >= 0.0)) {
    throw ValidationError("regularisation weights must be non-negative");
  }
  if (!(c.clamp_epsilon > 0.0 && c.clamp_epsilon < 0.5)) {
    throw ValidationError("clamp epsilon must lie in (0, 0.5)");
  }
}

Eigen::VectorXd softmax(const Eigen::VectorXd& scores) {
  const double m = scores.maxCoeff();
  Eigen::VectorXd e = (scores.array() - m).exp().matrix();
  return e / e.sum();
}

ForwardTrace forward(const NetworkParams& params, const Eigen::VectorXd& x) {
  check_input(params, x.size());
  ForwardTrace t;
  t.input = x;
  t.activations.reserve(params.layers.size());
  const Eigen::VectorXd* h = &t.input;
  for (std::size_t q = 0; q < params.layers.size(); ++q) {
    const auto& l = params.layers[q];
    Eigen::VectorXd a = (l.weights * *h + l.bias).cwiseMax(0.0);
    if (!a.allFinite()) {
      throw NumericalError("non-finite activation in layer " + std::to_string(q + 1));
    }
    t.activations.push_back(std::move(a));
    h = &t.activations.back();
  }
  t.probabilities = softmax(t.activations.back());
  return t;
}

double cross_entropy(const Eigen::VectorXd& probabilities, std::size_t label) {
  if (label >= static_cast<std::size_t>(probabilities.size())) {
    throw ValidationError("label " + std::to_string(label) + " out of range for " +
                          std::to_string(probabilities.size()) + " classes");
  }
  return -std::log(probabilities[idx(label)]);
}

double mean_cross_entropy(std::span<const ForwardTrace> traces, std::span<const std::size_t> labels) {
  if (traces.size() != labels.size()) throw ValidationError("traces and labels are not aligned");
  if (traces.empty()) throw ValidationError("empty batch");
  double s = 0.0;
  for (std::size_t i = 0; i < traces.size(); ++i) s += cross_entropy(traces[i].probabilities, labels[i]);
  return s / static_cast<double>(traces.size());
}

double loss_e1(std::span<const ForwardTrace> traces, std::span<const std::size_t> labels) {
  return 0.5 * mean_cross_entropy(traces, labels);
}

double penalty_weight_decay(const NetworkParams& params) {
  double s = 0.0;
  for (const auto& l : params.layers) s += l.weights.squaredNorm();
  return s;
}

std::vector<Eigen::VectorXd> mean_activations(std::span<const ForwardTrace> traces) {
  if (traces.empty()) throw ValidationError("empty batch");
  std::vector<Eigen::VectorXd> mean;
  for (const auto& a : traces.front().activations) mean.push_back(Eigen::VectorXd::Zero(a.size()));
  for (const auto& t : traces) {
    for (std::size_t q = 0; q < mean.size(); ++q) mean[q] += t.activations[q];
  }
  for (auto& m : mean) m /= static_cast<double>(traces.size());
  return mean;
}

double kl_bernoulli(double rho, double rho_hat) {
  return rho * std::log(rho / rho_hat) + (1.0 - rho) * std::log((1.0 - rho) / (1.0 - rho_hat));
}

double penalty_sparsity(std::span<const Eigen::VectorXd> mean_acts, double rho, double eps) {
  double s = 0.0;
  for (const auto& layer : mean_acts) {
    for (Eigen::Index t = 0; t < layer.size(); ++t) {
      s += kl_bernoulli(rho, std::clamp(layer[t], eps, 1.0 - eps));
    }
  }
  return s;
}

double loss_e2(const NetworkParams& params, std::span<const ForwardTrace> traces,
               std::span<const std::size_t> labels, const LossConfig& config) {
  validate(config);
  const double e1 = loss_e1(traces, labels);
  auto rho_hat = mean_activations(traces);
  if (config.sparsity_scope == SparsityScope::kHiddenLayers) rho_hat.pop_back();
  const double jw = penalty_weight_decay(params);
  const double js = penalty_sparsity(rho_hat, config.sparsity_target, config.clamp_epsilon);
  return e1 + config.weight_decay * jw + config.sparsity_weight * js;
}

Gradients backward(const NetworkParams& params, const Eigen::MatrixXd& batch,
                   std::span<const std::size_t> labels, const LossConfig& config) {
  validate(config);
  check_input(params, batch.rows());
  const auto B = batch.cols();
  if (B == 0) throw ValidationError("empty batch");
  if (static_cast<std::size_t>(B) != labels.size()) throw ValidationError("batch and labels are not aligned");
  const std::size_t Q = params.layers.size();
  const double inv_b = 1.0 / static_cast<double>(B);

  // forward, keeping pre-activations
  std::vector<Eigen::MatrixXd> pre(Q), act(Q);
  for (std::size_t q = 0; q < Q; ++q) {
    const auto& l = params.layers[q];
    const Eigen::MatrixXd& in = q == 0 ? batch : act[q - 1];
    pre[q] = (l.weights * in).colwise() + l.bias;
    act[q] = pre[q].cwiseMax(0.0);
    if (!act[q].allFinite()) {
      throw NumericalError("non-finite activation in layer " + std::to_string(q + 1));
    }
  }

  Gradients g;
  Eigen::MatrixXd probs(act[Q - 1].rows(), B);
  double ce = 0.0;
  for (Eigen::Index b = 0; b < B; ++b) {
    probs.col(b) = softmax(act[Q - 1].col(b));
    ce += cross_entropy(probs.col(b), labels[static_cast<std::size_t>(b)]);
  }
  g.mean_cross_entropy = ce * inv_b;
  g.e1 = 0.5 * g.mean_cross_entropy;

  double jw = 0.0;
  for (const auto& l : params.layers) jw += l.weights.squaredNorm();

  // sparsity slope per layer (zero vector for layers out of scope)
  const double rho = config.sparsity_target;
  const double eps = config.clamp_epsilon;
  double js = 0.0;
  std::vector<Eigen::VectorXd> slope(Q);
  for (std::size_t q = 0; q < Q; ++q) {
    slope[q] = Eigen::VectorXd::Zero(act[q].rows());
    if (!in_scope(q + 1, Q, config.sparsity_scope)) continue;
    const Eigen::VectorXd rho_hat = act[q].rowwise().sum() * inv_b;
    for (Eigen::Index t = 0; t < rho_hat.size(); ++t) {
      js += kl_bernoulli(rho, std::clamp(rho_hat[t], eps, 1.0 - eps));
      slope[q][t] = kl_slope(rho, rho_hat[t], eps);
    }
  }
  g.e2 = g.e1 + config.weight_decay * jw + config.sparsity_weight * js;

  // dE/dH(Q): softmax cross-entropy through the 1/(2B) factor
  Eigen::MatrixXd grad_h = probs;
  for (Eigen::Index b = 0; b < B; ++b) grad_h(idx(labels[static_cast<std::size_t>(b)]), b) -= 1.0;
  grad_h *= 0.5 * inv_b;

  g.layers.resize(Q);
  for (std::size_t q = Q; q-- > 0;) {
    grad_h.colwise() += config.sparsity_weight * inv_b * slope[q];
    const Eigen::MatrixXd grad_pre = grad_h.cwiseProduct((pre[q].array() > 0.0).cast<double>().matrix());
    const Eigen::MatrixXd& in = q == 0 ? batch : act[q - 1];
    g.layers[q].weights = grad_pre * in.transpose() + 2.0 * config.weight_decay * params.layers[q].weights;
    g.layers[q].bias = grad_pre.rowwise().sum();
    if (q > 0) grad_h = params.layers[q].weights.transpose() * grad_pre;
  }
  return g;
}

VirtualViews extract_virtual_views(const NetworkParams& params, const Eigen::VectorXd& x) {
  check_input(params, x.size());
  VirtualViews v;
  const Eigen::VectorXd* h = &x;
  for (std::size_t q = 0; q + 1 < params.layers.size(); ++q) {
    const auto& l = params.layers[q];
    v.layers.push_back((l.weights * *h + l.bias).cwiseMax(0.0));
    if (!v.layers.back().allFinite()) {
      throw NumericalError("non-finite activation in layer " + std::to_string(q + 1));
    }
    h = &v.layers.back();
  }
  return v;
}

}  // namespace rnktm::nktm
