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

#include "rnktm/protocol.hpp"

#include <algorithm>
#include <unordered_set>

#include <json.hpp>

#include "rnktm/descriptor.hpp"
#include "rnktm/error.hpp"
#include "rnktm/trajectories.hpp"

namespace rnktm::harness {

std::string_view protocol_name(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::kPairwise:
      return "pairwise";
    case ProtocolKind::kMultiSource:
      return "multi_source";
    case ProtocolKind::kLeaveOneOut:
      return "leave_one_out";
  }
  return "?";
}

ProtocolKind parse_protocol(std::string_view name) {
  for (auto k : {ProtocolKind::kPairwise, ProtocolKind::kMultiSource, ProtocolKind::kLeaveOneOut}) {
    if (protocol_name(k) == name) return k;
  }
  throw ValidationError("unknown protocol '" + std::string(name) + "'");
}

void check_disjoint(const ProtocolCell& cell) {
  if (cell.source.empty()) throw ValidationError("protocol cell has no source view");
  if (cell.target.empty()) throw ValidationError("protocol cell has no target view");
  for (const auto& s : cell.source) {
    if (std::find(cell.target.begin(), cell.target.end(), s) != cell.target.end()) {
      throw ValidationError("view '" + s + "' is both source and target");
    }
  }
}

std::vector<ProtocolCell> enumerate_cells(ProtocolKind kind, const std::vector<std::string>& views) {
  const std::size_t v = views.size();
  std::vector<ProtocolCell> cells;
  switch (kind) {
    case ProtocolKind::kPairwise:
      if (v < 2) throw ValidationError("pairwise protocol needs at least 2 views");
      for (std::size_t s = 0; s < v; ++s) {
        for (std::size_t t = 0; t < v; ++t) {
          if (s != t) cells.push_back({{views[s]}, {views[t]}});
        }
      }
      break;
    case ProtocolKind::kMultiSource:
      if (v < 3) throw ValidationError("multi-source protocol needs at least 3 views");
      for (std::size_t a = 0; a < v; ++a) {
        for (std::size_t b = a + 1; b < v; ++b) {
          for (std::size_t t = 0; t < v; ++t) {
            if (t != a && t != b) cells.push_back({{views[a], views[b]}, {views[t]}});
          }
        }
      }
      break;
    case ProtocolKind::kLeaveOneOut:
      if (v < 2) throw ValidationError("leave-one-out protocol needs at least 2 views");
      for (std::size_t t = 0; t < v; ++t) {
        ProtocolCell c;
        for (std::size_t s = 0; s < v; ++s) {
          if (s != t) c.source.push_back(views[s]);
        }
        c.target.push_back(views[t]);
        cells.push_back(std::move(c));
      }
      break;
  }
  for (const auto& c : cells) check_disjoint(c);
  return cells;
}

EncodedVideo encode_video(std::string video_id, std::string label, std::string view,
                          const Eigen::MatrixXd& descriptors, const bof::Codebook& codebook,
                          const nktm::NetworkParams& model) {
  if (model.input_dim() != codebook.k()) {
    throw ValidationError("model input width " + std::to_string(model.input_dim()) + " does not match codebook k = " +
                          std::to_string(codebook.k()));
  }
  EncodedVideo e{std::move(video_id), std::move(label), std::move(view), {}, {}};
  e.histogram = bof::encode_video(descriptors, codebook).values;
  e.virtual_views = nktm::extract_virtual_views(model, e.histogram);
  return e;
}

std::vector<EncodedVideo> encode_manifest(const DatasetManifest& manifest, const bof::Codebook& codebook,
                                          const nktm::NetworkParams& model) {
  if (model.input_dim() != codebook.k()) {
    throw ValidationError("model input width " + std::to_string(model.input_dim()) + " does not match codebook k = " +
                          std::to_string(codebook.k()));
  }
  std::vector<traj::TrajectoryFile> files;
  files.reserve(manifest.rows.size());
  for (const auto& row : manifest.rows) {
    auto f = traj::load_trajectories(row.path);
    if (f.count() > 0 && static_cast<std::size_t>(f.descriptors.rows()) != codebook.dim()) {
      throw ValidationError(row.path.string() + ": descriptor dimension " + std::to_string(f.descriptors.rows()) +
                            " does not match codebook dimension " + std::to_string(codebook.dim()));
    }
    files.push_back(std::move(f));
  }
  std::vector<EncodedVideo> out;
  out.reserve(files.size());
  for (std::size_t i = 0; i < files.size(); ++i) {
    const auto& row = manifest.rows[i];
    out.push_back(encode_video(row.video_id, row.label, row.view, files[i].descriptors, codebook, model));
  }
  return out;
}

CellResult evaluate_cell(std::span<const EncodedVideo> videos, const ProtocolCell& cell,
                         const std::vector<std::string>& classes, std::span<const std::size_t> dims,
                         std::size_t depth, const svm::SvmConfig& svm_config) {
  check_disjoint(cell);
  auto in = [](const std::vector<std::string>& set, const std::string& v) {
    return std::find(set.begin(), set.end(), v) != set.end();
  };

  svm::LabeledDescriptorSet train(classes);
  std::vector<const EncodedVideo*> test;
  for (const auto& v : videos) {
    if (in(cell.source, v.view)) {
      train.add(desc::build_cross_view_descriptor(v.histogram, v.virtual_views, depth, dims).values, v.label, v.view,
                v.video_id);
    } else if (in(cell.target, v.view)) {
      test.push_back(&v);
    }
  }
  if (train.size() == 0) throw ValidationError("source split is empty");
  if (test.empty()) throw ValidationError("target split is empty");

  std::unordered_set<std::string> training_ids(train.sample_ids().begin(), train.sample_ids().end());
  for (const auto& v : train.views()) {
    if (in(cell.target, v)) throw Error("target isolation violated: view '" + v + "' in the training set");
  }
  for (const auto* t : test) {
    if (training_ids.count(t->video_id) != 0) {
      throw Error("target isolation violated: sample '" + t->video_id + "' in the training set");
    }
  }

  const auto model = svm::svm_train(train, svm_config);

  CellResult r;
  r.source = cell.source;
  r.target = cell.target;
  r.depth = depth;
  r.confusion.assign(classes.size(), std::vector<std::size_t>(classes.size(), 0));
  for (const auto* t : test) {
    const auto truth = train.class_index(t->label);
    const auto d = desc::build_cross_view_descriptor(t->histogram, t->virtual_views, depth, dims);
    const auto pred = svm::svm_predict(model, d.values).label;
    ++r.confusion[truth][pred];
  }
  for (std::size_t c = 0; c < classes.size(); ++c) {
    Accuracy a;
    for (auto v : r.confusion[c]) a.total += v;
    a.correct = r.confusion[c][c];
    r.per_class.push_back({classes[c], a});
    r.accuracy.correct += a.correct;
    r.accuracy.total += a.total;
  }
  check_consistency(r);
  return r;
}

namespace {

std::vector<std::string> class_list(std::span<const EncodedVideo> videos) {
  std::vector<std::string> out;
  for (const auto& v : videos) {
    if (std::find(out.begin(), out.end(), v.label) == out.end()) out.push_back(v.label);
  }
  return out;
}

std::vector<std::string> view_list(std::span<const EncodedVideo> videos) {
  std::vector<std::string> out;
  for (const auto& v : videos) {
    if (std::find(out.begin(), out.end(), v.view) == out.end()) out.push_back(v.view);
  }
  return out;
}

std::string run_fingerprint(const RunConfig& c, const std::vector<ProtocolCell>& cells,
                            std::span<const std::size_t> dims, const std::string& extra) {
  nlohmann::json j;
  j["protocol"] = protocol_name(c.kind);
  j["depth"] = c.depth;
  j["dims"] = std::vector<std::size_t>(dims.begin(), dims.end());
  j["svm"] = {{"C", c.svm.C}, {"epochs", c.svm.epochs}, {"tolerance", c.svm.tolerance}, {"seed", c.svm.seed}};
  nlohmann::json jc = nlohmann::json::array();
  for (const auto& cell : cells) jc.push_back({{"source", cell.source}, {"target", cell.target}});
  j["cells"] = jc;
  j["inputs"] = extra;
  return fnv1a_hex(j.dump());
}

}  // namespace

EvalReport run_protocol(std::span<const EncodedVideo> videos, const RunConfig& config,
                        std::span<const std::size_t> dims, const std::string& config_fingerprint) {
  if (videos.empty()) throw ValidationError("no videos to evaluate");
  std::unordered_set<std::string> ids;
  for (const auto& v : videos) {
    if (!ids.insert(v.video_id).second) throw ValidationError("duplicate video id '" + v.video_id + "'");
  }
  const auto cells = config.cells.empty() ? enumerate_cells(config.kind, view_list(videos)) : config.cells;
  EvalReport report;
  report.classes = class_list(videos);
  report.seeds["svm"] = config.svm.seed;
  report.config_hash = run_fingerprint(config, cells, dims, config_fingerprint);
  for (const auto& cell : cells) {
    report.cells.push_back(evaluate_cell(videos, cell, report.classes, dims, config.depth, config.svm));
  }
  report.mean_accuracy = mean_cell_accuracy(report.cells);
  return report;
}

EvalReport run_protocol(const DatasetManifest& manifest, const RunConfig& config, const bof::Codebook& codebook,
                        const nktm::NetworkParams& model) {
  const auto videos = encode_manifest(manifest, codebook, model);
  nlohmann::json inputs = {{"codebook_k", codebook.k()}, {"codebook_seed", codebook.seed}};
  auto report = run_protocol(videos, config, model.dims, inputs.dump());
  report.seeds["codebook"] = codebook.seed;
  return report;
}

std::vector<EvalReport> ablate_depths(std::span<const EncodedVideo> videos, RunConfig config,
                                      std::span<const std::size_t> dims, const std::string& config_fingerprint) {
  if (dims.size() < 3) throw ValidationError("model has no virtual views to ablate");
  std::vector<EvalReport> series;
  for (std::size_t d = 0; d + 1 < dims.size(); ++d) {
    config.depth = d;
    series.push_back(run_protocol(videos, config, dims, config_fingerprint));
  }
  return series;
}

EvalReport merge_depth_series(const std::vector<EvalReport>& series) {
  if (series.empty()) throw ValidationError("empty depth series");
  EvalReport merged = series.back();
  for (std::size_t c = 0; c < merged.cells.size(); ++c) {
    merged.cells[c].per_depth.clear();
    for (const auto& r : series) {
      if (r.cells.size() != merged.cells.size()) throw ValidationError("depth series cells disagree");
      merged.cells[c].per_depth.push_back({r.cells[c].depth, r.cells[c].accuracy});
    }
  }
  return merged;
}

}  // namespace rnktm::harness
