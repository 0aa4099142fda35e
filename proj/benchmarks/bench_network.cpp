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
#include <vector>

#include <benchmark/benchmark.h>

#include "rnktm/network.hpp"

namespace {

std::vector<std::size_t> dims_for(std::int64_t k) {
  const auto w = static_cast<std::size_t>(k);
  return {w, w, w / 2, w / 4, 64};
}

Eigen::MatrixXd histograms(Eigen::Index k, Eigen::Index n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd x(k, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < k; ++r) x(r, c) = u(rng);
    x.col(c) /= x.col(c).sum();
  }
  return x;
}

void BM_Forward(benchmark::State& state) {
  const auto dims = dims_for(state.range(0));
  const auto params = rnktm::nktm::init_params(dims, 1);
  const auto x = histograms(state.range(0), 1);
  const Eigen::VectorXd v = x.col(0);
  for (auto _ : state) benchmark::DoNotOptimize(rnktm::nktm::forward(params, v));
}
BENCHMARK(BM_Forward)->Arg(128)->Arg(512)->Arg(2000);

void BM_Backward(benchmark::State& state) {
  const auto dims = dims_for(state.range(0));
  const auto params = rnktm::nktm::init_params(dims, 1);
  const auto batch = histograms(state.range(0), 64);
  std::vector<std::size_t> labels(64);
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = i % 64;
  const rnktm::nktm::LossConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(rnktm::nktm::backward(params, batch, labels, cfg));
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_Backward)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace
