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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rnktm/network.hpp"
#include "rnktm/training.hpp"

namespace rnktm::nktm {

struct ModelFile {
  NetworkParams params;
  std::string metadata_json;  // UTF-8 JSON object
};

// JSON object describing the training run: config, seed, sparsity estimator,
// final trace values.
std::string training_metadata(const TrainConfig& config, const std::vector<EpochStats>& trace);

// Parses the "training" block back out of metadata (missing keys keep defaults).
TrainConfig config_from_metadata(const std::string& metadata_json);

void write_model(std::ostream& out, const ModelFile& model);
ModelFile read_model(std::istream& in);
void save_model(const std::filesystem::path& path, const ModelFile& model);
ModelFile load_model(const std::filesystem::path& path);

}  // namespace rnktm::nktm
