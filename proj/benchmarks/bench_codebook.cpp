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

#include <benchmark/benchmark.h>

#include "rnktm/codebook.hpp"

namespace {

Eigen::MatrixXd uniform(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = u(rng);
  }
  return m;
}

void BM_Assign(benchmark::State& state) {
  rnktm::bof::Codebook cb;
  cb.centroids = uniform(30, state.range(0), 1);
  const auto probes = uniform(30, 1024, 2);
  Eigen::Index i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rnktm::bof::assign(probes.col(i), cb));
    i = (i + 1) % probes.cols();
  }
}
BENCHMARK(BM_Assign)->Arg(128)->Arg(512)->Arg(2000);

void BM_EncodeVideo(benchmark::State& state) {
  rnktm::bof::Codebook cb;
  cb.centroids = uniform(30, 2000, 3);
  const auto descriptors = uniform(30, state.range(0), 4);
  for (auto _ : state) benchmark::DoNotOptimize(rnktm::bof::encode_video(descriptors, cb));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EncodeVideo)->Arg(1000)->Arg(10000);

void BM_KMeansIteration(benchmark::State& state) {
  const auto x = uniform(30, 20000, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rnktm::bof::kmeans_fit(x, {.k = static_cast<std::size_t>(state.range(0)), .seed = 1, .max_iter = 1}));
  }
}
BENCHMARK(BM_KMeansIteration)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace
