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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "rnktm/codebook.hpp"
#include "rnktm/manifest.hpp"
#include "rnktm/network.hpp"
#include "rnktm/report.hpp"
#include "rnktm/svm.hpp"

namespace rnktm::harness {

enum class ProtocolKind {
  kPairwise,     // one source view -> one other target view
  kMultiSource,  // every pair of source views -> each remaining view
  kLeaveOneOut,  // all other views -> the held-out view
};

std::string_view protocol_name(ProtocolKind kind);
ProtocolKind parse_protocol(std::string_view name);

struct ProtocolCell {
  std::vector<std::string> source;
  std::vector<std::string> target;
};

// Throws ValidationError if either side is empty or they share a view.
void check_disjoint(const ProtocolCell& cell);

// Cells for `views` in the given order. Pairwise yields V(V-1) cells,
// multi-source C(V,2)(V-2), leave-one-out V.
std::vector<ProtocolCell> enumerate_cells(ProtocolKind kind, const std::vector<std::string>& views);

// One video after encoding: histogram plus its virtual views.
struct EncodedVideo {
  std::string video_id;
  std::string label;
  std::string view;
  Eigen::VectorXd histogram;
  nktm::VirtualViews virtual_views;
};

// Loads every trajectory file in the manifest, encodes it with the codebook
// and runs the truncated network. All files are checked before any encoding.
std::vector<EncodedVideo> encode_manifest(const DatasetManifest& manifest, const bof::Codebook& codebook,
                                          const nktm::NetworkParams& model);

EncodedVideo encode_video(std::string video_id, std::string label, std::string view,
                          const Eigen::MatrixXd& trajectory_descriptors, const bof::Codebook& codebook,
                          const nktm::NetworkParams& model);

// Trains on the source views only and predicts every target video. Throws
// ValidationError for an empty split or a class with no source sample, and
// Error if a target sample ever reaches the training set.
CellResult evaluate_cell(std::span<const EncodedVideo> videos, const ProtocolCell& cell,
                         const std::vector<std::string>& classes, std::span<const std::size_t> dims,
                         std::size_t depth, const svm::SvmConfig& svm_config);

struct RunConfig {
  ProtocolKind kind = ProtocolKind::kPairwise;
  std::vector<ProtocolCell> cells;  // explicit cells; empty means enumerate over all views
  std::size_t depth = 3;
  svm::SvmConfig svm;
};

EvalReport run_protocol(std::span<const EncodedVideo> videos, const RunConfig& config,
                        std::span<const std::size_t> dims, const std::string& config_fingerprint = {});

EvalReport run_protocol(const DatasetManifest& manifest, const RunConfig& config, const bof::Codebook& codebook,
                        const nktm::NetworkParams& model);

// One report per depth 0 ... Q-1 (same cells, same seeds).
std::vector<EvalReport> ablate_depths(std::span<const EncodedVideo> videos, RunConfig config,
                                      std::span<const std::size_t> dims, const std::string& config_fingerprint = {});

// The deepest report with per_depth filled in from the whole series.
EvalReport merge_depth_series(const std::vector<EvalReport>& series);

}  // namespace rnktm::harness
