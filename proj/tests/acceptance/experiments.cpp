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

#include "experiments.hpp"

#include <chrono>
#include <ostream>
#include <random>

#include "rnktm/camera.hpp"
#include "rnktm/correlation.hpp"
#include "rnktm/descriptor.hpp"
#include "rnktm/protocol.hpp"

namespace rnktm::acceptance {
namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

// Actions used as classes in the cross-view experiment.
constexpr std::array<mocap::MotionFamily, 5> kActionFamilies = {
    mocap::MotionFamily::kWalk, mocap::MotionFamily::kWave, mocap::MotionFamily::kPunch,
    mocap::MotionFamily::kKick, mocap::MotionFamily::kSquat};

pipeline::ViewSettings twelve_views() {
  pipeline::ViewSettings v;
  v.azimuths = view::ViewGrid::azimuth_range(60.0);
  v.zeniths = {10.0, 50.0};
  return v;
}

std::vector<std::size_t> network_dims(std::size_t k, std::size_t m) { return {k, 128, 64, 32, m}; }

nktm::TrainResult train_network(const std::vector<std::vector<Eigen::VectorXd>>& histograms, std::size_t k,
                                const nktm::TrainConfig& train, std::ostream* log) {
  nktm::DummyLabeledSet set(k, histograms.front().size());
  for (const auto& views : histograms) set.add_sequence(views);
  auto result = nktm::train(set, network_dims(k, set.sequence_count()), train);
  if (log != nullptr) {
    *log << "  network: " << set.sequence_count() << " sequences x " << set.view_count()
         << " views, mean cross-entropy " << result.trace.front().mean_cross_entropy << " -> "
         << result.trace.back().mean_cross_entropy << "\n";
  }
  return result;
}

}  // namespace

nktm::TrainConfig experiment_train_config() {
  nktm::TrainConfig t;
  t.learning_rate = 0.01;
  t.batch_size = 8;
  t.epochs = 100;
  t.loss.sparsity_weight = 1e-4;
  t.loss.sparsity_scope = nktm::SparsityScope::kHiddenLayers;
  return t;
}

pipeline::SyntheticClip random_clip(mocap::MotionFamily family, std::uint64_t seed, std::size_t frames) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.9, 1.1);
  pipeline::SyntheticClip c;
  c.family = family;
  c.style = mocap::random_style(family, rng());
  c.height_scale = u(rng);
  c.body_seed = rng();
  c.body_jitter = 1.0;
  c.frames = frames;
  return c;
}

std::vector<Eigen::MatrixXd> clip_descriptors(const pipeline::SyntheticClip& clip,
                                              const pipeline::ViewSettings& views, const SynthSettings& s) {
  const auto cloud = pipeline::synthesize_clip(clip, s.density);
  const auto projected = pipeline::render_views(cloud, views);
  traj::LinkOptions link;
  link.stride = s.track_stride;
  return pipeline::view_descriptors(projected, link);
}

bof::Codebook fit_codebook(const std::vector<std::vector<Eigen::MatrixXd>>& corpus, std::size_t k,
                           std::uint64_t seed, const SynthSettings& s) {
  std::vector<Eigen::MatrixXd> all;
  for (const auto& clip : corpus) all.insert(all.end(), clip.begin(), clip.end());
  const auto pooled = pipeline::pool_descriptors(all, s.codebook_samples, seed);
  bof::KMeansOptions opt;
  opt.k = k;
  opt.seed = seed;
  opt.max_iter = s.codebook_iterations;
  return bof::kmeans_fit(pooled, opt).codebook;
}

std::vector<Eigen::VectorXd> encode_views(const std::vector<Eigen::MatrixXd>& views, const bof::Codebook& cb) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(views.size());
  for (const auto& v : views) out.push_back(bof::encode_video(v, cb).values);
  return out;
}

ViewInvarianceOutcome run_view_invariance(const ViewInvarianceConfig& config, std::ostream* log) {
  const auto start = Clock::now();
  const auto views = twelve_views();
  std::mt19937_64 rng(config.seed);
  const std::size_t total = config.train_clips + config.held_out;
  std::vector<std::vector<Eigen::MatrixXd>> corpus;
  for (std::size_t i = 0; i < total; ++i) {
    const auto family = mocap::family_from_index(i % mocap::kMotionFamilyCount);
    corpus.push_back(clip_descriptors(random_clip(family, rng(), config.synth.frames), views, config.synth));
  }
  if (log != nullptr) *log << "  rendered " << total << " clips x 12 views in " << since(start) << " s\n";

  const std::vector<std::vector<Eigen::MatrixXd>> train_part(corpus.begin(),
                                                             corpus.begin() + static_cast<long>(config.train_clips));
  const auto cb = fit_codebook(train_part, config.k, config.seed, config.synth);
  std::vector<std::vector<Eigen::VectorXd>> histograms;
  for (const auto& clip : corpus) histograms.push_back(encode_views(clip, cb));
  const std::vector<std::vector<Eigen::VectorXd>> train_hist(histograms.begin(),
                                                              histograms.begin() + static_cast<long>(config.train_clips));
  const auto trained = train_network(train_hist, config.k, config.train, log);
  const auto& params = trained.params;

  ViewInvarianceOutcome out;
  out.initial_cross_entropy = trained.trace.front().mean_cross_entropy;
  out.final_cross_entropy = trained.trace.back().mean_cross_entropy;
  out.sequences = config.train_clips;
  const auto untrained = nktm::init_params(params.dims, config.train.seed);
  auto cn_of = [](const std::vector<Eigen::VectorXd>& rows, const nktm::NetworkParams& p) {
    const auto diag = harness::correlation_diagnostic(rows, p);
    std::array<double, 4> cn{};
    for (std::size_t l = 0; l < 4; ++l) cn[l] = diag.layers[l].value.cn;
    return cn;
  };
  for (std::size_t h = config.train_clips; h < total; ++h) {
    const auto cn = cn_of(histograms[h], params);
    if (cn[3] > cn[0]) ++out.passes;
    out.cn.push_back(cn);
    out.untrained_cn.push_back(cn_of(histograms[h], untrained));
  }
  // one view of each held-out motion, so rows are different actions
  std::vector<Eigen::VectorXd> across;
  for (std::size_t h = config.train_clips; h < total; ++h) across.push_back(histograms[h].front());
  out.across_actions_cn = cn_of(across, params);
  out.seconds = since(start);
  return out;
}

CrossViewOutcome run_cross_view(const CrossViewConfig& config, std::ostream* log) {
  const auto start = Clock::now();
  std::mt19937_64 rng(config.seed);

  // dummy-labelled corpus on its own view grid
  pipeline::ViewSettings corpus_views;
  corpus_views.azimuths = view::ViewGrid::azimuth_range(30.0);
  corpus_views.zeniths = {config.zenith};
  std::vector<std::vector<Eigen::MatrixXd>> corpus;
  for (std::size_t i = 0; i < config.corpus_clips; ++i) {
    const auto family = mocap::family_from_index(i % mocap::kMotionFamilyCount);
    corpus.push_back(clip_descriptors(random_clip(family, rng(), config.synth.frames), corpus_views, config.synth));
  }
  const auto cb = fit_codebook(corpus, config.k, rng(), config.synth);
  std::vector<std::vector<Eigen::VectorXd>> histograms;
  for (const auto& clip : corpus) histograms.push_back(encode_views(clip, cb));
  auto train = config.train;
  train.seed = rng();
  const auto params = train_network(histograms, config.k, train, log).params;
  if (log != nullptr) *log << "  corpus + network ready after " << since(start) << " s\n";

  // action videos: every actor performs every class facing azimuth 0
  pipeline::ViewSettings test_views;
  test_views.azimuths = {0.0, 90.0};
  test_views.zeniths = {config.zenith};
  std::vector<harness::EncodedVideo> videos;
  std::vector<std::string> classes;
  for (std::size_t c = 0; c < config.classes; ++c) {
    classes.emplace_back(mocap::family_name(kActionFamilies[c % kActionFamilies.size()]));
  }
  for (std::size_t a = 0; a < config.actors; ++a) {
    const std::uint64_t actor_seed = rng();
    for (std::size_t c = 0; c < config.classes; ++c) {
      auto clip = random_clip(kActionFamilies[c], actor_seed + c, config.synth.frames);
      clip.style.facing_deg = 0.0;
      clip.style.travel_speed = 0.0;
      const auto desc = clip_descriptors(clip, test_views, config.synth);
      for (std::size_t v = 0; v < desc.size(); ++v) {
        const std::string view = v == 0 ? "az0" : "az90";
        videos.push_back(harness::encode_video("a" + std::to_string(a) + "_" + classes[c] + "_" + view, classes[c],
                                               view, desc[v], cb, params));
      }
    }
  }

  CrossViewOutcome out;
  harness::ProtocolCell cell{{"az0"}, {"az90"}};
  svm::SvmConfig svm;
  svm.C = config.svm_c;
  svm.seed = config.seed;
  svm.epochs = 1000;
  for (std::size_t d = 0; d < 4; ++d) {
    const auto r = harness::evaluate_cell(videos, cell, classes, params.dims, d, svm);
    out.accuracy[d] = r.accuracy.value();
  }
  out.seconds = since(start);
  return out;
}

}  // namespace rnktm::acceptance
