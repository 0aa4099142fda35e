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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace rnktm::harness {

struct ManifestRow {
  std::string video_id;
  std::filesystem::path path;  // resolved against the manifest's directory
  std::string label;
  std::string view;
  std::size_t line = 0;  // 1-based line in the CSV, header is line 1
};

struct DatasetManifest {
  std::vector<ManifestRow> rows;

  // Distinct views / labels in order of first appearance.
  std::vector<std::string> views() const;
  std::vector<std::string> labels() const;
};

inline constexpr std::string_view kManifestHeader = "video_id,path,label,view";

// Relative paths are resolved against `base_dir`. With `check_files`, every
// referenced file must exist.
DatasetManifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir,
                               bool check_files = true);
DatasetManifest load_manifest(const std::filesystem::path& path);

std::string format_manifest(const DatasetManifest& manifest, const std::filesystem::path& base_dir);

}  // namespace rnktm::harness
