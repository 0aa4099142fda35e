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

#include "records.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rnktm/error.hpp"

namespace rnktm::cli {
namespace {

constexpr int kSchemaVersion = 1;

nlohmann::json videos_to_json(const std::vector<VideoVector>& videos) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& v : videos) {
    out.push_back({{"video_id", v.video_id},
                   {"label", v.label},
                   {"view", v.view},
                   {"values", std::vector<double>(v.values.data(), v.values.data() + v.values.size())}});
  }
  return out;
}

std::vector<VideoVector> videos_from_json(const nlohmann::json& arr, std::size_t expected_dim) {
  std::vector<VideoVector> out;
  for (const auto& j : arr) {
    VideoVector v;
    v.video_id = j.at("video_id").get<std::string>();
    v.label = j.at("label").get<std::string>();
    v.view = j.at("view").get<std::string>();
    const auto values = j.at("values").get<std::vector<double>>();
    if (expected_dim != 0 && values.size() != expected_dim) {
      throw FormatError("video '" + v.video_id + "' has " + std::to_string(values.size()) + " values, expected " +
                        std::to_string(expected_dim));
    }
    v.values = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
    out.push_back(std::move(v));
  }
  return out;
}

nlohmann::json parse_json(const std::filesystem::path& path, const char* kind) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": not valid JSON: " + e.what());
  }
  if (!j.is_object() || j.value("kind", "") != kind) {
    throw FormatError(path.string() + ": not a " + std::string(kind) + " file");
  }
  if (j.value("schema_version", 0) != kSchemaVersion) {
    throw FormatError(path.string() + ": unsupported schema version");
  }
  return j;
}

}  // namespace

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void save_histograms(const std::filesystem::path& path, const HistogramFile& file) {
  nlohmann::json j = {{"kind", "histograms"},
                      {"schema_version", kSchemaVersion},
                      {"codebook_k", file.codebook_k},
                      {"codebook_seed", file.codebook_seed},
                      {"normalization", "l1"},
                      {"videos", videos_to_json(file.videos)}};
  write_text(path, j.dump() + "\n");
}

HistogramFile load_histograms(const std::filesystem::path& path) {
  const auto j = parse_json(path, "histograms");
  try {
    HistogramFile f;
    f.codebook_k = j.at("codebook_k").get<std::size_t>();
    f.codebook_seed = j.at("codebook_seed").get<std::uint64_t>();
    f.videos = videos_from_json(j.at("videos"), f.codebook_k);
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void save_descriptors(const std::filesystem::path& path, const DescriptorFile& file) {
  nlohmann::json j = {{"kind", "descriptors"},
                      {"schema_version", kSchemaVersion},
                      {"depth", file.depth},
                      {"dims", file.dims},
                      {"videos", videos_to_json(file.videos)}};
  write_text(path, j.dump() + "\n");
}

DescriptorFile load_descriptors(const std::filesystem::path& path) {
  const auto j = parse_json(path, "descriptors");
  try {
    DescriptorFile f;
    f.depth = j.at("depth").get<std::size_t>();
    f.dims = j.at("dims").get<std::vector<std::size_t>>();
    f.videos = videos_from_json(j.at("videos"), 0);
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace rnktm::cli
