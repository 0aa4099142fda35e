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

#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "records.hpp"
#include "rnktm/bvh.hpp"
#include "rnktm/codebook.hpp"
#include "rnktm/correlation.hpp"
#include "rnktm/descriptor.hpp"
#include "rnktm/error.hpp"
#include "rnktm/manifest.hpp"
#include "rnktm/network_io.hpp"
#include "rnktm/pipeline.hpp"
#include "rnktm/procedural_motion.hpp"
#include "rnktm/protocol.hpp"
#include "rnktm/render.hpp"
#include "rnktm/report.hpp"
#include "rnktm/svm.hpp"
#include "rnktm/trajectories.hpp"

namespace rnktm::cli {
namespace fs = std::filesystem;
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::vector<std::string> family_names() {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < mocap::kMotionFamilyCount; ++i) {
    out.emplace_back(mocap::family_name(mocap::family_from_index(i)));
  }
  return out;
}

bool is_humanoid(const mocap::SkeletonRig& rig) {
  const auto ref = mocap::humanoid_rig();
  if (ref.joint_count() != rig.joint_count()) return false;
  for (std::size_t j = 0; j < rig.joint_count(); ++j) {
    if (ref.joints()[j].name != rig.joints()[j].name) return false;
  }
  return true;
}

void check_depth(std::size_t depth, const nktm::NetworkParams& model) {
  if (depth + 1 >= model.dims.size()) {
    throw ValidationError("depth " + std::to_string(depth) + " needs a model with more than " +
                          std::to_string(depth) + " hidden layers");
  }
}

// ---------------------------------------------------------------------------

struct GenMotionArgs {
  std::string family = "walk";
  std::size_t frames = 60;
  double height_scale = 1.0;
  double spread = 1.0;
  std::string out;
};

void gen_motion(const GenMotionArgs& a, const Globals& g) {
  const auto family = mocap::parse_family(a.family);
  const auto rig = mocap::humanoid_rig(a.height_scale);
  const auto style = mocap::random_style(family, g.seed, a.spread);
  const auto motion = mocap::generate_motion(rig, family, style, a.frames);
  write_text(a.out, mocap::write_bvh(rig, motion));
  std::cout << "wrote " << a.out << ": " << a.family << ", " << motion.frame_count() << " frames\n";
}

struct SynthArgs {
  std::string bvh;
  std::string out;
  double density = 500.0;
  double body_jitter = 0.0;
  std::size_t min_frames = 16;
};

void synth(const SynthArgs& a, const Globals& g) {
  const auto parsed = mocap::parse_bvh(read_text(a.bvh), {a.min_frames});
  const auto shape = is_humanoid(parsed.rig) ? mocap::humanoid_body_shape(g.seed, a.body_jitter) : mocap::BodyShape{};
  const auto seq = pipeline::synthesize(parsed.rig, parsed.motion, shape, a.density, g.seed);
  save_point_cloud_sequence(a.out, seq);
  std::cout << "wrote " << a.out << ": " << seq.frame_count() << " frames x " << seq.point_count() << " points\n";
}

struct ProjectArgs {
  std::string in;
  std::string out_dir;
  double azimuth_step = 20.0;
  std::vector<double> zeniths = {0, 10, 30, 50, 70, 90};
  double radius_scale = 3.0;
  double focal = 1.0;
  double hpr_gamma = 3.0;
};

void project(const ProjectArgs& a, const Globals&) {
  const auto seq = load_point_cloud_sequence(a.in);
  pipeline::ViewSettings views;
  views.azimuths = view::ViewGrid::azimuth_range(a.azimuth_step);
  views.zeniths = a.zeniths;
  views.radius_scale = a.radius_scale;
  views.focal_length = a.focal;
  views.hpr_gamma = a.hpr_gamma;
  const auto grid = view::fit_view_grid(seq, views.azimuths, views.zeniths, views.radius_scale, views.focal_length);
  const auto cameras = view::generate_view_grid(grid);
  fs::create_directories(a.out_dir);
  const std::string stem = fs::path(a.in).stem().string();
  for (const auto& cam : cameras) {
    const auto projected = view::render_view(seq, cam, {a.hpr_gamma});
    const fs::path path =
        fs::path(a.out_dir) / (stem + "_az" + num(cam.azimuth_deg) + "_zen" + num(cam.zenith_deg) + ".pj2d");
    view::save_projected_sequence(path, projected);
    std::cout << path.string() << "\n";
  }
}

struct ExtractTrajArgs {
  std::string in;
  std::string out;
  std::size_t horizon = 15;
  std::size_t stride = 1;
  std::optional<double> min_motion;
  std::string video_id;
};

void extract_traj(const ExtractTrajArgs& a, const Globals&) {
  const auto projected = view::load_projected_sequence(a.in);
  traj::LinkOptions opt;
  opt.horizon = a.horizon;
  opt.stride = a.stride;
  opt.min_total_motion = a.min_motion;
  traj::TrajectoryFile file;
  file.horizon = static_cast<std::uint32_t>(a.horizon);
  file.descriptors = traj::extract_descriptors(projected.frames, opt);
  file.video_id = a.video_id.empty() ? fs::path(a.out).stem().string() : a.video_id;
  // PJ2D files only come from the synthetic renderer.
  file.source = traj::TrajectorySource::kSynthetic;
  traj::save_trajectories(a.out, file);
  std::cout << "wrote " << a.out << ": " << file.count() << " trajectories\n";
}

struct BuildCodebookArgs {
  std::vector<std::string> inputs;
  std::string out;
  std::size_t k = 2000;
  std::size_t max_iter = 100;
  double rel_tol = 1e-4;
  std::size_t max_descriptors = 100000;
};

void build_codebook(const BuildCodebookArgs& a, const Globals& g) {
  std::vector<Eigen::MatrixXd> parts;
  std::optional<std::uint32_t> horizon;
  for (const auto& path : a.inputs) {
    auto f = traj::load_trajectories(path);
    if (f.source != traj::TrajectorySource::kSynthetic) {
      throw ValidationError(path + " is tagged '" + std::string(traj::source_name(f.source)) +
                            "'; the general codebook is fit on synthetic trajectories only");
    }
    if (horizon && *horizon != f.horizon) {
      throw ValidationError(path + " has horizon " + std::to_string(f.horizon) + ", expected " +
                            std::to_string(*horizon));
    }
    horizon = f.horizon;
    parts.push_back(std::move(f.descriptors));
  }
  const auto pooled = pipeline::pool_descriptors(parts, a.max_descriptors, g.seed);
  bof::KMeansOptions opt;
  opt.k = a.k;
  opt.seed = g.seed;
  opt.max_iter = a.max_iter;
  opt.rel_tol = a.rel_tol;
  const auto result = bof::kmeans_fit(pooled, opt);
  bof::save_codebook(a.out, result.codebook);
  std::cout << "wrote " << a.out << ": k = " << result.codebook.k() << " over " << pooled.cols()
            << " descriptors, " << result.codebook.iterations << " iterations, objective " << result.objective
            << "\n";
}

struct EncodeArgs {
  std::string codebook;
  std::string manifest;
  std::string out;
};

void encode(const EncodeArgs& a, const Globals&) {
  const auto cb = bof::load_codebook(a.codebook);
  const auto manifest = harness::load_manifest(a.manifest);
  std::vector<traj::TrajectoryFile> files;
  for (const auto& row : manifest.rows) {
    auto f = traj::load_trajectories(row.path);
    if (f.count() > 0 && static_cast<std::size_t>(f.descriptors.rows()) != cb.dim()) {
      throw ValidationError(row.path.string() + ": descriptor dimension " + std::to_string(f.descriptors.rows()) +
                            " does not match codebook dimension " + std::to_string(cb.dim()));
    }
    files.push_back(std::move(f));
  }
  HistogramFile out;
  out.codebook_k = cb.k();
  out.codebook_seed = cb.seed;
  std::size_t empty = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const auto& row = manifest.rows[i];
    const auto h = bof::encode_video(files[i].descriptors, cb);
    if (h.empty()) ++empty;
    out.videos.push_back({row.video_id, row.label, row.view, h.values});
  }
  save_histograms(a.out, out);
  std::cout << "wrote " << a.out << ": " << out.videos.size() << " histograms";
  if (empty > 0) std::cout << " (" << empty << " videos had no trajectories)";
  std::cout << "\n";
}

struct TrainNktmArgs {
  std::string histograms;
  std::string out;
  std::vector<std::size_t> hidden = {2000, 1000, 500};
  std::size_t epochs = 100;
  std::size_t batch_size = 64;
  double learning_rate = 0.01;
  double momentum = 0.9;
  double weight_decay = 0.0005;
  double sparsity_weight = 0.5;
  double sparsity_target = 0.05;
  std::string sparsity_scope = "all";
};

void train_nktm(const TrainNktmArgs& a, const Globals& g) {
  nktm::TrainConfig cfg;
  cfg.epochs = a.epochs;
  cfg.batch_size = a.batch_size;
  cfg.learning_rate = a.learning_rate;
  cfg.momentum = a.momentum;
  cfg.loss.weight_decay = a.weight_decay;
  cfg.loss.sparsity_weight = a.sparsity_weight;
  cfg.loss.sparsity_target = a.sparsity_target;
  cfg.loss.sparsity_scope = a.sparsity_scope == "hidden" ? nktm::SparsityScope::kHiddenLayers
                                                         : nktm::SparsityScope::kAllLayers;
  cfg.seed = g.seed;
  nktm::validate(cfg);

  const auto hist = load_histograms(a.histograms);
  // label = dummy sequence label; every sequence must cover the same views
  std::vector<std::string> order;
  std::map<std::string, std::map<std::string, const VideoVector*>> seqs;
  for (const auto& v : hist.videos) {
    auto [it, fresh] = seqs.try_emplace(v.label);
    if (fresh) order.push_back(v.label);
    if (!it->second.emplace(v.view, &v).second) {
      throw ValidationError("sequence '" + v.label + "' lists view '" + v.view + "' twice");
    }
  }
  if (order.empty()) throw ValidationError(a.histograms + " holds no videos");
  std::vector<std::string> views;
  for (const auto& [view, _] : seqs[order.front()]) views.push_back(view);
  nktm::DummyLabeledSet set(hist.codebook_k, views.size());
  for (const auto& label : order) {
    const auto& s = seqs[label];
    std::vector<Eigen::VectorXd> per_view;
    for (const auto& view : views) {
      const auto it = s.find(view);
      if (it == s.end() || s.size() != views.size()) {
        throw ValidationError("sequence '" + label + "' does not cover the same views as '" + order.front() + "'");
      }
      per_view.push_back(it->second->values);
    }
    set.add_sequence(per_view);
  }

  std::vector<std::size_t> dims = {hist.codebook_k};
  dims.insert(dims.end(), a.hidden.begin(), a.hidden.end());
  dims.push_back(set.sequence_count());
  const auto result = nktm::train(set, dims, cfg);
  nktm::save_model(a.out, {result.params, nktm::training_metadata(cfg, result.trace)});
  std::cout << "wrote " << a.out << ": " << set.sequence_count() << " sequences x " << views.size()
            << " views, mean cross-entropy " << result.trace.front().mean_cross_entropy << " -> "
            << result.trace.back().mean_cross_entropy << "\n";
}

struct ModelInputs {
  std::string codebook;
  std::string model;
  std::string manifest;
};

struct Loaded {
  bof::Codebook codebook;
  nktm::ModelFile model;
  harness::DatasetManifest manifest;
};

Loaded load_inputs(const ModelInputs& in) {
  Loaded l{bof::load_codebook(in.codebook), nktm::load_model(in.model), harness::load_manifest(in.manifest)};
  if (l.model.params.input_dim() != l.codebook.k()) {
    throw ValidationError("model input width " + std::to_string(l.model.params.input_dim()) +
                          " does not match codebook k = " + std::to_string(l.codebook.k()));
  }
  return l;
}

void add_model_inputs(CLI::App* c, ModelInputs& in) {
  c->add_option("--codebook", in.codebook, "Codebook file (CDBK)")->required()->check(CLI::ExistingFile);
  c->add_option("--model", in.model, "Trained model file (NKTM)")->required()->check(CLI::ExistingFile);
  c->add_option("--manifest", in.manifest, "Dataset manifest CSV")->required()->check(CLI::ExistingFile);
}

struct ExtractDescArgs {
  ModelInputs in;
  std::size_t depth = 3;
  std::string out;
};

void extract_desc(const ExtractDescArgs& a, const Globals&) {
  const auto l = load_inputs(a.in);
  check_depth(a.depth, l.model.params);
  const auto videos = harness::encode_manifest(l.manifest, l.codebook, l.model.params);
  DescriptorFile out;
  out.depth = a.depth;
  out.dims = l.model.params.dims;
  for (const auto& v : videos) {
    const auto d = desc::build_cross_view_descriptor(v.histogram, v.virtual_views, a.depth, out.dims);
    out.videos.push_back({v.video_id, v.label, v.view, d.values});
  }
  save_descriptors(a.out, out);
  std::cout << "wrote " << a.out << ": " << out.videos.size() << " descriptors of length "
            << desc::descriptor_length(out.dims, a.depth) << "\n";
}

struct TrainSvmArgs {
  std::string descriptors;
  std::vector<std::string> views;
  std::string out;
  double c = 1.0;
  std::size_t epochs = 100;
  double tolerance = 1e-6;
};

void train_svm(const TrainSvmArgs& a, const Globals& g) {
  const auto file = load_descriptors(a.descriptors);
  const std::set<std::string> wanted(a.views.begin(), a.views.end());
  std::vector<const VideoVector*> chosen;
  std::vector<std::string> classes;
  for (const auto& v : file.videos) {
    if (!wanted.empty() && !wanted.count(v.view)) continue;
    chosen.push_back(&v);
    if (std::find(classes.begin(), classes.end(), v.label) == classes.end()) classes.push_back(v.label);
  }
  if (chosen.empty()) throw ValidationError("no descriptors match the requested views");
  svm::LabeledDescriptorSet set(classes);
  for (const auto* v : chosen) set.add(v->values, v->label, v->view, v->video_id);
  svm::SvmConfig cfg;
  cfg.C = a.c;
  cfg.epochs = a.epochs;
  cfg.tolerance = a.tolerance;
  cfg.seed = g.seed;
  const auto model = svm::svm_train(set, cfg);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (svm::svm_predict(model, set.descriptors().col(static_cast<Eigen::Index>(i))).label == set.labels()[i]) {
      ++correct;
    }
  }
  svm::save_svm(a.out, model);
  std::cout << "wrote " << a.out << ": " << classes.size() << " classes, " << set.size()
            << " samples, training accuracy " << static_cast<double>(correct) / static_cast<double>(set.size())
            << "\n";
}

struct EvaluateArgs {
  ModelInputs in;
  std::string protocol = "pairwise";
  std::size_t depth = 3;
  double c = 1.0;
  std::size_t svm_epochs = 100;
  std::string out;
};

harness::RunConfig run_config(const EvaluateArgs& a, const Globals& g) {
  harness::RunConfig rc;
  rc.kind = harness::parse_protocol(a.protocol);
  rc.depth = a.depth;
  rc.svm.C = a.c;
  rc.svm.epochs = a.svm_epochs;
  rc.svm.seed = g.seed;
  return rc;
}

void add_eval_options(CLI::App* c, EvaluateArgs& a) {
  add_model_inputs(c, a.in);
  c->add_option("--protocol", a.protocol, "Evaluation protocol")
      ->check(CLI::IsMember({"pairwise", "multi_source", "leave_one_out"}))
      ->capture_default_str();
  c->add_option("--C", a.c, "SVM regularisation")->check(CLI::PositiveNumber)->capture_default_str();
  c->add_option("--svm-epochs", a.svm_epochs, "SVM passes per class")->check(CLI::PositiveNumber)->capture_default_str();
  c->add_option("--out", a.out, "Report JSON")->required();
}

void print_cells(const harness::EvalReport& r) {
  for (const auto& cell : r.cells) {
    std::string src;
    for (const auto& s : cell.source) src += (src.empty() ? "" : "+") + s;
    std::string dst;
    for (const auto& s : cell.target) dst += (dst.empty() ? "" : "+") + s;
    std::cout << "  " << src << " -> " << dst << ": " << cell.accuracy.correct << "/" << cell.accuracy.total;
    for (const auto& d : cell.per_depth) std::cout << "  d" << d.depth << " " << d.accuracy.value();
    std::cout << "\n";
  }
}

void evaluate(const EvaluateArgs& a, const Globals& g) {
  const auto l = load_inputs(a.in);
  check_depth(a.depth, l.model.params);
  auto report = harness::run_protocol(l.manifest, run_config(a, g), l.codebook, l.model.params);
  report.seeds["global"] = g.seed;
  harness::save_report(report, a.out);
  print_cells(report);
  std::cout << "wrote " << a.out << ": " << report.cells.size() << " cells, mean accuracy " << report.mean_accuracy
            << "\n";
}

void ablate(const EvaluateArgs& a, const Globals& g) {
  const auto l = load_inputs(a.in);
  const auto videos = harness::encode_manifest(l.manifest, l.codebook, l.model.params);
  const nlohmann::json inputs = {{"codebook_k", l.codebook.k()}, {"codebook_seed", l.codebook.seed}};
  const auto series = harness::ablate_depths(videos, run_config(a, g), l.model.params.dims, inputs.dump());
  auto merged = harness::merge_depth_series(series);
  merged.seeds["global"] = g.seed;
  merged.seeds["codebook"] = l.codebook.seed;
  harness::save_report(merged, a.out);
  print_cells(merged);
  for (const auto& r : series) {
    std::cout << "depth " << r.cells.front().depth << ": mean accuracy " << r.mean_accuracy << "\n";
  }
  std::cout << "wrote " << a.out << "\n";
}

struct DiagnoseArgs {
  ModelInputs in;
  std::vector<std::string> labels;
  std::string out;
};

void diagnose(const DiagnoseArgs& a, const Globals&) {
  const auto l = load_inputs(a.in);
  const auto videos = harness::encode_manifest(l.manifest, l.codebook, l.model.params);
  auto labels = a.labels.empty() ? l.manifest.labels() : a.labels;
  nlohmann::json out = {{"schema_version", 1}, {"actions", nlohmann::json::object()}};
  for (const auto& label : labels) {
    std::vector<Eigen::VectorXd> rows;
    for (const auto& v : videos) {
      if (v.label == label) rows.push_back(v.histogram);
    }
    if (rows.size() < 2) throw ValidationError("label '" + label + "' has fewer than 2 videos");
    const auto d = harness::correlation_diagnostic(rows, l.model.params);
    out["actions"][label] = nlohmann::json::parse(harness::diagnostic_to_json(d));
    std::cout << label << " (" << rows.size() << " views):";
    for (const auto& layer : d.layers) std::cout << " " << layer.layer << " " << layer.value.cn;
    std::cout << "\n";
  }
  write_text(a.out, out.dump(2) + "\n");
  std::cout << "wrote " << a.out << "\n";
}

}  // namespace

void add_commands(CLI::App& app, const Globals& g, std::map<const CLI::App*, Handler>& handlers) {
  {
    auto a = std::make_shared<GenMotionArgs>();
    auto* c = app.add_subcommand("gen-motion", "Write a procedural humanoid motion as BVH");
    c->add_option("--family", a->family, "Motion family")->check(CLI::IsMember(family_names()))->capture_default_str();
    c->add_option("--frames", a->frames, "Frame count")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--height-scale", a->height_scale, "Skeleton scale")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--style-spread", a->spread, "Spread of the random style")->check(CLI::NonNegativeNumber)->capture_default_str();
    c->add_option("--out", a->out, "Output BVH")->required();
    handlers[c] = [a, &g] { gen_motion(*a, g); };
  }
  {
    auto a = std::make_shared<SynthArgs>();
    auto* c = app.add_subcommand("synth", "Animate a capsule body on a BVH motion into a point-cloud sequence");
    c->add_option("--bvh", a->bvh, "Input BVH")->required()->check(CLI::ExistingFile);
    c->add_option("--out", a->out, "Output point-cloud sequence (PCSQ)")->required();
    c->add_option("--density", a->density, "Surface samples per square unit")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--body-jitter", a->body_jitter, "Per-bone radius jitter")->check(CLI::NonNegativeNumber)->capture_default_str();
    c->add_option("--min-frames", a->min_frames, "Reject shorter motions")->check(CLI::PositiveNumber)->capture_default_str();
    handlers[c] = [a, &g] { synth(*a, g); };
  }
  {
    auto a = std::make_shared<ProjectArgs>();
    auto* c = app.add_subcommand("project", "Render a point-cloud sequence from a hemisphere of virtual cameras");
    c->add_option("--in", a->in, "Input point-cloud sequence (PCSQ)")->required()->check(CLI::ExistingFile);
    c->add_option("--out-dir", a->out_dir, "Directory for the PJ2D files")->required();
    c->add_option("--azimuth-step", a->azimuth_step, "Azimuth spacing in degrees")
        ->check(CLI::Range(0.0, 360.0) & CLI::PositiveNumber)
        ->capture_default_str();
    c->add_option("--zeniths", a->zeniths, "Zenith angles in degrees")
        ->delimiter(',')
        ->check(CLI::Range(0.0, 90.0))
        ->capture_default_str();
    c->add_option("--radius-scale", a->radius_scale, "Camera distance over bounding-sphere radius")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    c->add_option("--focal", a->focal, "Focal length")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--hpr-gamma", a->hpr_gamma, "Hidden point removal flip exponent")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    handlers[c] = [a, &g] { project(*a, g); };
  }
  {
    auto a = std::make_shared<ExtractTrajArgs>();
    auto* c = app.add_subcommand("extract-traj", "Link projected points into normalised trajectory descriptors");
    c->add_option("--in", a->in, "Input projected sequence (PJ2D)")->required()->check(CLI::ExistingFile);
    c->add_option("--out", a->out, "Output trajectory file (TRAJ)")->required();
    c->add_option("--horizon", a->horizon, "Track length L")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--stride", a->stride, "Frames between track starts")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--min-motion", a->min_motion, "Drop tracks that move less than this")->check(CLI::NonNegativeNumber);
    c->add_option("--video-id", a->video_id, "Video id tag (default: output stem)");
    handlers[c] = [a, &g] { extract_traj(*a, g); };
  }
  {
    auto a = std::make_shared<BuildCodebookArgs>();
    auto* c = app.add_subcommand("build-codebook", "Fit the k-means codebook on synthetic trajectory files");
    c->add_option("--inputs", a->inputs, "Synthetic trajectory files (TRAJ)")->required()->check(CLI::ExistingFile);
    c->add_option("--out", a->out, "Output codebook (CDBK)")->required();
    c->add_option("--k", a->k, "Codebook size")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--max-iter", a->max_iter, "Lloyd iteration cap")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--rel-tol", a->rel_tol, "Relative objective tolerance")->check(CLI::NonNegativeNumber)->capture_default_str();
    c->add_option("--max-descriptors", a->max_descriptors, "Subsample the pooled descriptors to this many")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    handlers[c] = [a, &g] { build_codebook(*a, g); };
  }
  {
    auto a = std::make_shared<EncodeArgs>();
    auto* c = app.add_subcommand("encode", "Encode every manifest video as a bag-of-features histogram");
    c->add_option("--codebook", a->codebook, "Codebook file (CDBK)")->required()->check(CLI::ExistingFile);
    c->add_option("--manifest", a->manifest, "Manifest CSV")->required()->check(CLI::ExistingFile);
    c->add_option("--out", a->out, "Output histograms JSON")->required();
    handlers[c] = [a, &g] { encode(*a, g); };
  }
  {
    auto a = std::make_shared<TrainNktmArgs>();
    auto* c = app.add_subcommand("train-nktm", "Train the transfer network on dummy-labelled multi-view histograms");
    c->add_option("--histograms", a->histograms, "Histograms JSON from encode; label = sequence")
        ->required()
        ->check(CLI::ExistingFile);
    c->add_option("--out", a->out, "Output model (NKTM)")->required();
    c->add_option("--hidden", a->hidden, "Hidden layer widths")->delimiter(',')->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--epochs", a->epochs, "Epochs")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--batch-size", a->batch_size, "Mini-batch size")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--learning-rate", a->learning_rate, "Initial learning rate")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--momentum", a->momentum, "Momentum")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    c->add_option("--weight-decay", a->weight_decay, "lambda_w")->check(CLI::NonNegativeNumber)->capture_default_str();
    c->add_option("--sparsity-weight", a->sparsity_weight, "lambda_s")->check(CLI::NonNegativeNumber)->capture_default_str();
    c->add_option("--sparsity-target", a->sparsity_target, "rho")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    c->add_option("--sparsity-scope", a->sparsity_scope, "Layers under the sparsity penalty")
        ->check(CLI::IsMember({"all", "hidden"}))
        ->capture_default_str();
    handlers[c] = [a, &g] { train_nktm(*a, g); };
  }
  {
    auto a = std::make_shared<ExtractDescArgs>();
    auto* c = app.add_subcommand("extract-desc", "Build cross-view descriptors for every manifest video");
    add_model_inputs(c, a->in);
    c->add_option("--depth", a->depth, "Virtual views to concatenate")->capture_default_str();
    c->add_option("--out", a->out, "Output descriptors JSON")->required();
    handlers[c] = [a, &g] { extract_desc(*a, g); };
  }
  {
    auto a = std::make_shared<TrainSvmArgs>();
    auto* c = app.add_subcommand("train-svm", "Train a one-vs-rest linear SVM on descriptors");
    c->add_option("--descriptors", a->descriptors, "Descriptors JSON from extract-desc")->required()->check(CLI::ExistingFile);
    c->add_option("--views", a->views, "Train only on these views (default: all)")->delimiter(',');
    c->add_option("--out", a->out, "Output SVM model (LSVM)")->required();
    c->add_option("--C", a->c, "Regularisation")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--epochs", a->epochs, "Passes per class")->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--tolerance", a->tolerance, "Stopping tolerance")->check(CLI::NonNegativeNumber)->capture_default_str();
    handlers[c] = [a, &g] { train_svm(*a, g); };
  }
  {
    auto a = std::make_shared<EvaluateArgs>();
    auto* c = app.add_subcommand("evaluate", "Run a cross-view protocol and write a report");
    add_eval_options(c, *a);
    c->add_option("--depth", a->depth, "Virtual views to concatenate")->capture_default_str();
    handlers[c] = [a, &g] { evaluate(*a, g); };
  }
  {
    auto a = std::make_shared<EvaluateArgs>();
    auto* c = app.add_subcommand("ablate", "Run a protocol at every descriptor depth");
    add_eval_options(c, *a);
    handlers[c] = [a, &g] { ablate(*a, g); };
  }
  {
    auto a = std::make_shared<DiagnoseArgs>();
    auto* c = app.add_subcommand("diagnose", "Layer-wise correlation norm over each action's views");
    add_model_inputs(c, a->in);
    c->add_option("--labels", a->labels, "Labels to diagnose (default: all)")->delimiter(',');
    c->add_option("--out", a->out, "Output JSON")->required();
    handlers[c] = [a, &g] { diagnose(*a, g); };
  }
}

}  // namespace rnktm::cli
