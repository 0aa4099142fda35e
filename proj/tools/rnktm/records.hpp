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
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace rnktm::cli {

struct VideoVector {
  std::string video_id;
  std::string label;
  std::string view;
  Eigen::VectorXd values;
};

// Output of `encode`: one L1-normalised histogram per manifest row.
struct HistogramFile {
  std::size_t codebook_k = 0;
  std::uint64_t codebook_seed = 0;
  std::vector<VideoVector> videos;
};

// Output of `extract-desc`.
struct DescriptorFile {
  std::size_t depth = 0;
  std::vector<std::size_t> dims;
  std::vector<VideoVector> videos;
};

void save_histograms(const std::filesystem::path& path, const HistogramFile& file);
HistogramFile load_histograms(const std::filesystem::path& path);

void save_descriptors(const std::filesystem::path& path, const DescriptorFile& file);
DescriptorFile load_descriptors(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace rnktm::cli
