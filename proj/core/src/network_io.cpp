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

#include "rnktm/network_io.hpp"

#include <json.hpp>

#include "rnktm/binary_io.hpp"
#include "rnktm/error.hpp"

namespace rnktm::nktm {
namespace {

constexpr io::Magic kMagic{'N', 'K', 'T', 'M'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kMaxLayers = 64;

const char* scope_name(SparsityScope s) {
  return s == SparsityScope::kAllLayers ? "all_layers" : "hidden_layers";
}

}  // namespace

std::string training_metadata(const TrainConfig& c, const std::vector<EpochStats>& trace) {
  nlohmann::json j;
  j["training"] = {{"learning_rate", c.learning_rate},
                   {"momentum", c.momentum},
                   {"weight_decay", c.loss.weight_decay},
                   {"sparsity_weight", c.loss.sparsity_weight},
                   {"sparsity_target", c.loss.sparsity_target},
                   {"activation_clamp_epsilon", c.loss.clamp_epsilon},
                   {"sparsity_scope", scope_name(c.loss.sparsity_scope)},
                   {"batch_size", c.batch_size},
                   {"epochs", c.epochs},
                   {"seed", c.seed},
                   {"lr_decay_at", c.lr_decay_at},
                   {"lr_decay_factor", c.lr_decay_factor}};
  j["estimators"] = {{"mean_activation", "per-batch mean"},
                     {"classification_loss", "sum of cross-entropy / (2 * batch size)"},
                     {"initialization", "normal, variance 2 / fan_in, zero bias"}};
  if (!trace.empty()) {
    j["final_epoch"] = {{"e2", trace.back().e2}, {"mean_cross_entropy", trace.back().mean_cross_entropy}};
  }
  return j.dump();
}

TrainConfig config_from_metadata(const std::string& metadata_json) {
  TrainConfig c;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(metadata_json);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("model metadata: ") + e.what());
  }
  if (!j.contains("training")) return c;
  const auto& t = j["training"];
  try {
    c.learning_rate = t.value("learning_rate", c.learning_rate);
    c.momentum = t.value("momentum", c.momentum);
    c.loss.weight_decay = t.value("weight_decay", c.loss.weight_decay);
    c.loss.sparsity_weight = t.value("sparsity_weight", c.loss.sparsity_weight);
    c.loss.sparsity_target = t.value("sparsity_target", c.loss.sparsity_target);
    c.loss.clamp_epsilon = t.value("activation_clamp_epsilon", c.loss.clamp_epsilon);
    c.loss.sparsity_scope = t.value("sparsity_scope", std::string("all_layers")) == "hidden_layers"
                                ? SparsityScope::kHiddenLayers
                                : SparsityScope::kAllLayers;
    c.batch_size = t.value("batch_size", c.batch_size);
    c.epochs = t.value("epochs", c.epochs);
    c.seed = t.value("seed", c.seed);
    c.lr_decay_at = t.value("lr_decay_at", c.lr_decay_at);
    c.lr_decay_factor = t.value("lr_decay_factor", c.lr_decay_factor);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("model metadata: ") + e.what());
  }
  return c;
}

void write_model(std::ostream& out, const ModelFile& model) {
  validate(model.params);
  const auto& p = model.params;
  io::BinaryWriter w(out);
  w.magic(kMagic);
  w.u32(kVersion);
  w.u32(static_cast<std::uint32_t>(p.depth()));
  for (auto d : p.dims) w.u32(static_cast<std::uint32_t>(d));
  for (const auto& l : p.layers) {
    for (Eigen::Index r = 0; r < l.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < l.weights.cols(); ++c) w.f32(static_cast<float>(l.weights(r, c)));
    }
    for (Eigen::Index r = 0; r < l.bias.size(); ++r) w.f32(static_cast<float>(l.bias[r]));
  }
  w.sized_string(model.metadata_json.empty() ? std::string("{}") : model.metadata_json);
}

ModelFile read_model(std::istream& in) {
  io::BinaryReader r(in, "model");
  r.expect_magic(kMagic);
  if (r.u32() != kVersion) throw FormatError("model: unsupported version");
  const auto q = r.u32();
  if (q == 0 || q > kMaxLayers) throw FormatError("model: implausible layer count " + std::to_string(q));
  std::vector<std::size_t> dims;
  for (std::uint32_t i = 0; i <= q; ++i) {
    const auto d = r.u32();
    if (d == 0) throw FormatError("model: zero layer width");
    dims.push_back(d);
  }
  ModelFile m;
  m.params = zero_params(dims);
  for (auto& l : m.params.layers) {
    for (Eigen::Index row = 0; row < l.weights.rows(); ++row) {
      for (Eigen::Index c = 0; c < l.weights.cols(); ++c) l.weights(row, c) = r.f32();
    }
    for (Eigen::Index row = 0; row < l.bias.size(); ++row) l.bias[row] = r.f32();
    if (!l.weights.allFinite() || !l.bias.allFinite()) throw FormatError("model: non-finite parameter");
  }
  m.metadata_json = r.sized_string(1u << 24);
  try {
    if (!nlohmann::json::parse(m.metadata_json).is_object()) throw FormatError("model: metadata is not an object");
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("model: bad metadata: ") + e.what());
  }
  return m;
}

void save_model(const std::filesystem::path& path, const ModelFile& model) {
  auto out = io::open_for_write(path);
  write_model(out, model);
  if (!out) throw Error("write failed: " + path.string());
}

ModelFile load_model(const std::filesystem::path& path) {
  auto in = io::open_for_read(path);
  return read_model(in);
}

}  // namespace rnktm::nktm
