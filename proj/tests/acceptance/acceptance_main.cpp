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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "experiments.hpp"
#include "rnktm/camera.hpp"
#include "rnktm/codebook.hpp"
#include "rnktm/convex_hull.hpp"
#include "rnktm/descriptor.hpp"
#include "rnktm/manifest.hpp"
#include "rnktm/network.hpp"
#include "rnktm/network_io.hpp"
#include "rnktm/protocol.hpp"
#include "rnktm/report.hpp"
#include "rnktm/svm.hpp"
#include "rnktm/trajectories.hpp"
#include "rnktm/visibility.hpp"
#include "../support/gradcheck.hpp"
#include "../support/oracles.hpp"

namespace rnktm::acceptance {
namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// 1. analytic E2 gradient against central differences
Verdict gradient_oracle() {
  constexpr double kTol = 1e-5;
  double worst = 0.0;
  std::size_t draws = 0;
  std::size_t fails = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto c = testing::random_grad_case(seed);
    draws += c.draws;
    for (auto scope : {nktm::SparsityScope::kAllLayers, nktm::SparsityScope::kHiddenLayers}) {
      nktm::LossConfig cfg;
      cfg.sparsity_scope = scope;
      const auto r = testing::gradient_check(c.params, c.batch, c.labels, cfg, 1e-4);
      worst = std::max(worst, r.max_rel_error);
      if (r.max_rel_error > kTol) ++fails;
    }
  }
  std::cout << "  info: 20 conditioned networks took " << draws
            << " draws (kink margin >= 1e-2, batch-mean activations away from the KL clamp)\n";
  for (double step : {1e-4, 1e-5}) {
    double uworst = 0.0;
    std::size_t ufails = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto c = testing::random_grad_case(seed, false);
      for (auto scope : {nktm::SparsityScope::kAllLayers, nktm::SparsityScope::kHiddenLayers}) {
        nktm::LossConfig cfg;
        cfg.sparsity_scope = scope;
        const auto r = testing::gradient_check(c.params, c.batch, c.labels, cfg, step);
        uworst = std::max(uworst, r.max_rel_error);
        if (r.max_rel_error > kTol) ++ufails;
      }
    }
    std::cout << "  info: unconditioned first draws, step " << step << ": worst rel error " << uworst << ", "
              << ufails << "/40 above 1e-5\n";
  }
  return {fails == 0, "40 checks (20 nets x 2 sparsity scopes), worst rel error " + fmt("%.3g", worst) +
                          ", " + std::to_string(fails) + " above 1e-5"};
}

// 2. normalised displacement invariants
Verdict track_invariants() {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> grid(-4096, 4096);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  double worst_len = 0.0;
  double worst_scale = 0.0;
  std::size_t translation_mismatch = 0;
  std::size_t n = 0;
  while (n < 10000) {
    traj::Track t;
    t.positions.resize(16);
    for (auto& p : t.positions) p = Eigen::Vector2d(grid(rng), grid(rng)) / 64.0;
    double motion = 0.0;
    for (std::size_t i = 1; i < 16; ++i) motion += (t.positions[i] - t.positions[i - 1]).norm();
    if (motion == 0.0) continue;
    ++n;
    const auto base = traj::normalize_track(t);
    worst_len = std::max(worst_len, std::abs(base.total_length() - 1.0));

    // dyadic offsets keep every difference exact, so the descriptor must match bit for bit
    auto moved = t;
    const Eigen::Vector2d off(grid(rng) / 8.0, grid(rng) / 8.0);
    for (auto& p : moved.positions) p += off;
    if (traj::normalize_track(moved).values() != base.values()) ++translation_mismatch;

    auto scaled = t;
    const double s = scale(rng);
    for (auto& p : scaled.positions) p *= s;
    worst_scale = std::max(worst_scale, (traj::normalize_track(scaled).values() - base.values()).cwiseAbs().maxCoeff());
  }
  const bool ok = worst_len <= 1e-9 && translation_mismatch == 0 && worst_scale <= 1e-9;
  return {ok, "10000 tracks L=15: max |sum-1| " + fmt("%.3g", worst_len) + ", translation mismatches " +
                  std::to_string(translation_mismatch) + ", max scale deviation " + fmt("%.3g", worst_scale)};
}

// 3. sparsity penalty
Verdict sparsity_penalty() {
  constexpr double rho = 0.05;
  constexpr double eps = 1e-6;
  const std::vector<Eigen::VectorXd> at_target = {Eigen::VectorXd::Constant(32, rho), Eigen::VectorXd::Constant(8, rho)};
  const double at = nktm::penalty_sparsity(at_target, rho, eps);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> near(-1e-3, 1e-3);
  double min_js = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 1000; ++i) {
    Eigen::VectorXd v(16);
    for (Eigen::Index t = 0; t < v.size(); ++t) v(t) = (i % 4 == 0) ? rho + near(rng) : u(rng);
    const std::vector<Eigen::VectorXd> one = {v};
    min_js = std::min(min_js, nktm::penalty_sparsity(one, rho, eps));
  }

  const double kl = nktm::kl_bernoulli(0.05, 0.5);
  constexpr double kExpected = 0.494628;
  const bool kl_ok = std::abs(kl - kExpected) <= 1e-6;
  std::cout << "  info: KL(0.05 || 0.5) = " << fmt("%.16f", kl) << "; closed form 0.05 ln 0.1 + 0.95 ln 1.9 = "
            << fmt("%.16f", 0.05 * std::log(0.1) + 0.95 * std::log(1.9)) << "; expected 0.494628 +/- 1e-6, off by "
            << fmt("%.3g", kl - kExpected) << "\n";
  const bool ok = at == 0.0 && min_js >= 0.0 && kl_ok;
  return {ok, "J_s at target " + fmt("%.3g", at) + ", min J_s over 1000 vectors " + fmt("%.3g", min_js) +
                  ", KL(0.05||0.5) " + fmt("%.8f", kl) + (kl_ok ? "" : " (outside 0.494628 +/- 1e-6)")};
}

// 4. k-means oracles
Verdict kmeans_oracles() {
  std::size_t monotone_breaks = 0;
  std::size_t label_mismatch = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    const Eigen::Index dim = 2 + static_cast<Eigen::Index>(seed % 7);
    const Eigen::Index n = 200 + static_cast<Eigen::Index>(seed * 13 % 400);
    Eigen::MatrixXd x(dim, n);
    for (Eigen::Index c = 0; c < n; ++c) {
      const double shift = static_cast<double>(c % 5) * 3.0;
      for (Eigen::Index r = 0; r < dim; ++r) x(r, c) = g(rng) + (r == 0 ? shift : 0.0);
    }
    bof::KMeansOptions opt;
    opt.k = 2 + seed % 15;
    opt.seed = seed;
    opt.rel_tol = 0.0;
    opt.max_iter = 50;
    const auto r = bof::kmeans_fit(x, opt);
    const auto& trace = r.codebook.objective_trace;
    for (std::size_t i = 1; i < trace.size(); ++i) {
      if (trace[i] > trace[i - 1]) ++monotone_breaks;
    }
    const auto& cen = r.codebook.centroids;
    for (Eigen::Index i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (Eigen::Index c = 0; c < cen.cols(); ++c) {
        double d = 0.0;
        for (Eigen::Index k = 0; k < dim; ++k) d += (x(k, i) - cen(k, c)) * (x(k, i) - cen(k, c));
        if (d < best_d) {
          best_d = d;
          best = static_cast<std::size_t>(c);
        }
      }
      if (r.labels[static_cast<std::size_t>(i)] != best) ++label_mismatch;
    }
  }
  Eigen::MatrixXd masses(1, 200);
  masses.leftCols(100).setZero();
  masses.rightCols(100).setConstant(10.0);
  bof::KMeansOptions two;
  two.k = 2;
  two.seed = 7;
  const auto r = bof::kmeans_fit(masses, two);
  const double lo = std::min(r.codebook.centroids(0, 0), r.codebook.centroids(0, 1));
  const double hi = std::max(r.codebook.centroids(0, 0), r.codebook.centroids(0, 1));
  const bool masses_ok = lo == 0.0 && hi == 10.0;
  const bool ok = monotone_breaks == 0 && label_mismatch == 0 && masses_ok;
  return {ok, "50 runs: objective increases " + std::to_string(monotone_breaks) + ", label mismatches vs scan " +
                  std::to_string(label_mismatch) + ", two masses -> {" + fmt("%g", lo) + ", " + fmt("%g", hi) + "}"};
}

double sphere_agreement(double gamma) {
  const auto pts = testing::sphere_samples(2000, 1.0, 5);
  const Eigen::Vector3d cam(0.6, -1.2, 2.6);  // |cam| = 3
  const auto mask = view::hidden_point_removal(pts, cam, gamma);
  std::size_t agree = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (mask[i] == testing::sphere_ray_visible(pts[i], Eigen::Vector3d::Zero(), 1.0, cam)) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(pts.size());
}

// 5. hull, back-face and HPR oracles
Verdict geometry_oracles() {
  std::size_t hull_mismatch = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto pts = testing::gaussian_cloud(50, seed);
    if (geometry::convex_hull_3d(pts).vertices != testing::supporting_facet_vertices(pts)) ++hull_mismatch;
  }

  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  std::size_t cull_mismatch = 0;
  for (int trial = 0; trial < 20; ++trial) {
    PointCloudFrame fr;
    for (int i = 0; i < 500; ++i) {
      fr.positions.emplace_back(g(rng), g(rng), g(rng));
      fr.normals.push_back(Eigen::Vector3d(g(rng), g(rng), g(rng)).normalized());
      fr.point_ids.push_back(static_cast<std::uint64_t>(i));
    }
    view::CameraPose cam;
    cam.azimuth_deg = 18.0 * trial;
    cam.zenith_deg = 5.0 + 4.0 * trial;
    cam.radius = 6.0;
    const auto mask = view::backface_cull(fr, cam);
    for (std::size_t i = 0; i < fr.size(); ++i) {
      if (mask[i] != (fr.normals[i].dot(cam.position() - fr.positions[i]) > 0.0)) ++cull_mismatch;
    }
  }

  const double agree3 = sphere_agreement(3.0);
  std::cout << "  info: HPR sphere agreement at gamma 1: " << fmt("%.4f", sphere_agreement(1.0))
            << ", gamma 2: " << fmt("%.4f", sphere_agreement(2.0)) << ", gamma 3: " << fmt("%.4f", agree3) << "\n";
  const bool ok = hull_mismatch == 0 && cull_mismatch == 0 && agree3 >= 0.95;
  return {ok, "hull vertex-set mismatches " + std::to_string(hull_mismatch) + "/20, back-face mismatches " +
                  std::to_string(cull_mismatch) + "/10000, HPR gamma 3 agreement " + fmt("%.4f", agree3) +
                  " (needs >= 0.95)"};
}

// 6. layer-wise view invariance on held-out motions
Verdict view_invariance() {
  ViewInvarianceConfig cfg;
  const auto out = run_view_invariance(cfg, &std::cout);
  for (std::size_t i = 0; i < out.cn.size(); ++i) {
    const auto& c = out.cn[i];
    std::cout << "  held-out " << i << ": C_n x " << fmt("%.4f", c[0]) << ", h1 " << fmt("%.4f", c[1]) << ", h2 "
              << fmt("%.4f", c[2]) << ", h3 " << fmt("%.4f", c[3]) << "\n";
  }
  for (std::size_t i = 0; i < out.untrained_cn.size(); ++i) {
    const auto& c = out.untrained_cn[i];
    std::cout << "  control, untrained network, held-out " << i << ": C_n x " << fmt("%.4f", c[0]) << ", h3 "
              << fmt("%.4f", c[3]) << "\n";
  }
  const auto& a = out.across_actions_cn;
  std::cout << "  control, trained network, rows = different held-out motions: C_n x " << fmt("%.4f", a[0])
            << ", h1 " << fmt("%.4f", a[1]) << ", h2 " << fmt("%.4f", a[2]) << ", h3 " << fmt("%.4f", a[3]) << "\n";
  // a collapsed network maps every input to the same code and passes the C_n test vacuously
  const bool learned = out.final_cross_entropy <= out.initial_cross_entropy - 0.1;
  const bool ok = out.passes >= 3 && out.cn.size() >= 4 && out.sequences >= 50 && out.seconds < 600.0 && learned;
  return {ok, std::to_string(out.sequences) + " training motions, C_n(h3) > C_n(x) for " + std::to_string(out.passes) +
                  "/" + std::to_string(out.cn.size()) + " held-out motions, cross-entropy " +
                  fmt("%.3f", out.initial_cross_entropy) + " -> " + fmt("%.3f", out.final_cross_entropy) +
                  (learned ? "" : " (network did not learn)") + ", " +
                  fmt("%.0f", out.seconds) + " s"};
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// 7. depth-3 descriptors beat raw histograms across views
Verdict cross_view() {
  const auto start = Clock::now();
  std::vector<double> d0;
  std::vector<double> d3;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    CrossViewConfig cfg;
    cfg.seed = seed;
    const auto out = run_cross_view(cfg, &std::cout);
    std::cout << "  seed " << seed << ": accuracy depth 0..3 = " << fmt("%.3f", out.accuracy[0]) << " "
              << fmt("%.3f", out.accuracy[1]) << " " << fmt("%.3f", out.accuracy[2]) << " "
              << fmt("%.3f", out.accuracy[3]) << " (" << fmt("%.0f", out.seconds) << " s)\n";
    d0.push_back(out.accuracy[0]);
    d3.push_back(out.accuracy[3]);
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  const double m0 = median(d0);
  const double m3 = median(d3);
  return {m3 > m0 && secs < 600.0, "median accuracy depth 3 " + fmt("%.3f", m3) + " vs depth 0 " + fmt("%.3f", m0) +
                                       " over 5 seeds, " + fmt("%.0f", secs) + " s"};
}

struct PipelineArtifacts {
  std::string codebook;
  std::string model;
  std::string svm;
  std::vector<double> accuracies;
  std::string report;
};

PipelineArtifacts small_pipeline() {
  SynthSettings s;
  s.density = 300.0;
  s.frames = 30;
  s.codebook_samples = 5000;
  s.codebook_iterations = 10;
  pipeline::ViewSettings views;
  views.azimuths = {0.0, 90.0, 180.0, 270.0};
  views.zeniths = {50.0};
  const std::size_t k = 16;
  const std::size_t clips = 6;

  std::vector<std::vector<Eigen::MatrixXd>> corpus;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < clips; ++i) {
    const auto family = mocap::family_from_index(i % 3);
    corpus.push_back(clip_descriptors(random_clip(family, 100 + i, s.frames), views, s));
    labels.emplace_back(mocap::family_name(family));
  }
  const auto cb = fit_codebook(corpus, k, 4, s);

  nktm::DummyLabeledSet set(k, views.azimuths.size());
  std::vector<std::vector<Eigen::VectorXd>> hist;
  for (const auto& c : corpus) {
    hist.push_back(encode_views(c, cb));
    set.add_sequence(hist.back());
  }
  auto train = experiment_train_config();
  train.epochs = 15;
  train.seed = 9;
  const std::vector<std::size_t> dims = {k, 16, 12, 8, clips};
  const auto trained = nktm::train(set, dims, train);

  std::vector<harness::EncodedVideo> videos;
  for (std::size_t i = 0; i < clips; ++i) {
    for (std::size_t v = 0; v < views.azimuths.size(); ++v) {
      videos.push_back({"clip" + std::to_string(i) + "_" + std::to_string(v), labels[i], "az" + std::to_string(v),
                        hist[i][v], nktm::extract_virtual_views(trained.params, hist[i][v])});
    }
  }
  svm::LabeledDescriptorSet train_set({"walk", "run", "wave"});
  for (const auto& v : videos) {
    if (v.view == "az0") train_set.add(desc::describe(trained.params, v.histogram, 3).values, v.label, v.view);
  }
  svm::SvmConfig sc;
  sc.seed = 2;
  const auto model = svm::svm_train(train_set, sc);

  harness::RunConfig rc;
  rc.svm = sc;
  const auto report = harness::run_protocol(videos, rc, dims, "determinism");

  PipelineArtifacts out;
  std::ostringstream a;
  bof::write_codebook(a, cb);
  out.codebook = a.str();
  std::ostringstream b;
  nktm::write_model(b, {trained.params, nktm::training_metadata(train, trained.trace)});
  out.model = b.str();
  std::ostringstream c;
  svm::write_svm(c, model);
  out.svm = c.str();
  for (const auto& cell : report.cells) out.accuracies.push_back(cell.accuracy.value());
  out.accuracies.push_back(report.mean_accuracy);
  out.report = harness::report_to_json(report);
  return out;
}

// 8. bit-identical artefacts across runs
Verdict determinism() {
  const auto a = small_pipeline();
  const auto b = small_pipeline();
  const bool cb = a.codebook == b.codebook;
  const bool md = a.model == b.model;
  const bool sv = a.svm == b.svm;
  const bool acc = a.accuracies == b.accuracies;
  const bool rep = a.report == b.report;
  auto yn = [](bool v) { return v ? std::string("identical") : std::string("DIFFER"); };
  return {cb && md && sv && acc && rep,
          "codebook (" + std::to_string(a.codebook.size()) + " B) " + yn(cb) + ", model (" +
              std::to_string(a.model.size()) + " B) " + yn(md) + ", svm (" + std::to_string(a.svm.size()) + " B) " +
              yn(sv) + ", report accuracies " + yn(acc) + ", report json " + yn(rep)};
}

std::size_t protocol_cells(std::size_t view_count, harness::ProtocolKind kind, bool& valid) {
  std::string text = std::string(harness::kManifestHeader) + "\n";
  int id = 0;
  for (std::size_t v = 0; v < view_count; ++v) {
    for (const char* label : {"walk", "wave"}) {
      for (int actor = 0; actor < 2; ++actor) {
        text += "vid" + std::to_string(id++) + ",none.traj," + label + ",cam" + std::to_string(v) + "\n";
      }
    }
  }
  const auto manifest = harness::parse_manifest(text, ".", false);
  const std::vector<std::size_t> dims = {6, 5, 4, 3, 3};
  const auto model = nktm::init_params(dims, 1);
  std::mt19937_64 rng(view_count);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<harness::EncodedVideo> videos;
  for (const auto& row : manifest.rows) {
    Eigen::VectorXd h(6);
    for (Eigen::Index i = 0; i < 6; ++i) h(i) = u(rng);
    h /= h.sum();
    videos.push_back({row.video_id, row.label, row.view, h, nktm::extract_virtual_views(model, h)});
  }
  harness::RunConfig rc;
  rc.kind = kind;
  const auto report = harness::run_protocol(videos, rc, dims);
  std::set<std::pair<std::vector<std::string>, std::vector<std::string>>> distinct;
  for (const auto& cell : report.cells) {
    distinct.insert({cell.source, cell.target});
    for (const auto& s : cell.source) {
      if (std::find(cell.target.begin(), cell.target.end(), s) != cell.target.end()) valid = false;
    }
  }
  if (distinct.size() != report.cells.size()) valid = false;
  return report.cells.size();
}

// 9. protocol shapes
Verdict protocol_shape() {
  bool valid = true;
  const auto pairwise = protocol_cells(5, harness::ProtocolKind::kPairwise, valid);
  const auto multi = protocol_cells(4, harness::ProtocolKind::kMultiSource, valid);
  return {pairwise == 20 && multi == 12 && valid,
          "pairwise on 5 views: " + std::to_string(pairwise) + " cells, two-source on 4 views: " +
              std::to_string(multi) + " cells" + (valid ? ", all distinct and disjoint" : ", overlapping cells")};
}

// 10. svm sanity
Verdict svm_sanity() {
  std::size_t imperfect = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::size_t dim = 2 + seed % 6;
    const std::size_t classes = 2 + seed % (dim - 1);
    std::vector<std::string> names;
    for (std::size_t c = 0; c < classes; ++c) names.push_back("c" + std::to_string(c));
    svm::LabeledDescriptorSet set(names);
    // class c has x_c >= 5 and every other class has x_c <= 1
    for (std::size_t i = 0; i < 30 * classes; ++i) {
      const std::size_t c = i % classes;
      Eigen::VectorXd x(static_cast<Eigen::Index>(dim));
      for (auto& v : x) v = u(rng);
      x(static_cast<Eigen::Index>(c)) += 6.0;
      set.add(x, names[c]);
    }
    svm::SvmConfig cfg;
    cfg.C = 10.0;
    cfg.epochs = 500;
    cfg.seed = seed;
    const auto m = svm::svm_train(set, cfg);
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (svm::svm_predict(m, set.descriptors().col(static_cast<Eigen::Index>(i))).label != set.labels()[i]) {
        ++imperfect;
        break;
      }
    }
  }

  // dyadic scores and shifts keep every sum exact, ties included
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> q(-64, 64);
  std::size_t shift_mismatch = 0;
  for (int trial = 0; trial < 100000; ++trial) {
    Eigen::VectorXd s(2 + trial % 9);
    for (auto& v : s) v = q(rng) / 16.0;
    const double c = q(rng) * 4.0;
    if (svm::argmax_first((s.array() + c).matrix()) != svm::argmax_first(s)) ++shift_mismatch;
  }
  return {imperfect == 0 && shift_mismatch == 0,
          std::to_string(10 - imperfect) + "/10 separable sets at 100% training accuracy, argmax shift mismatches " +
              std::to_string(shift_mismatch) + "/100000"};
}

}  // namespace
}  // namespace rnktm::acceptance

int main(int argc, char** argv) {
  using namespace rnktm::acceptance;
  struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> run;
    double budget_s;
  };
  const std::vector<Criterion> all = {
      {1, "gradient oracle", gradient_oracle, 5.0},
      {2, "trajectory descriptor invariants", track_invariants, 1.0},
      {3, "sparsity penalty", sparsity_penalty, 0.0},
      {4, "k-means oracles", kmeans_oracles, 0.0},
      {5, "geometry oracles", geometry_oracles, 30.0},
      {6, "layer-wise view invariance", view_invariance, 600.0},
      {7, "cross-view classification", cross_view, 600.0},
      {8, "determinism", determinism, 0.0},
      {9, "protocol shape", protocol_shape, 0.0},
      {10, "svm sanity", svm_sanity, 0.0},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    std::cout << "criterion " << c.id << ": " << c.name << "\n" << std::flush;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0.0 && secs >= c.budget_s) {
      v.pass = false;
      v.detail += ", over the " + fmt("%.0f", c.budget_s) + " s budget";
    }
    if (!v.pass) ++failed;
    std::cout << (v.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << v.detail << " ("
              << fmt("%.2f", secs) << " s)\n"
              << std::flush;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
