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

#include "rnktm/manifest.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "rnktm/binary_io.hpp"
#include "rnktm/error.hpp"

namespace rnktm::harness {
namespace {

std::vector<std::string> split_commas(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> distinct(const std::vector<ManifestRow>& rows, std::string ManifestRow::*field) {
  std::vector<std::string> out;
  for (const auto& r : rows) {
    if (std::find(out.begin(), out.end(), r.*field) == out.end()) out.push_back(r.*field);
  }
  return out;
}

}  // namespace

std::vector<std::string> DatasetManifest::views() const { return distinct(rows, &ManifestRow::view); }
std::vector<std::string> DatasetManifest::labels() const { return distinct(rows, &ManifestRow::label); }

DatasetManifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir, bool check_files) {
  DatasetManifest m;
  std::unordered_map<std::string, std::size_t> seen;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!have_header) {
      if (line_no == 1 && line.size() >= 3 && line.substr(0, 3) == "\xEF\xBB\xBF") line.remove_prefix(3);
      if (line != kManifestHeader) {
        throw ParseError(line_no, "header mismatch: expected '" + std::string(kManifestHeader) + "'");
      }
      have_header = true;
      continue;
    }
    if (line.empty()) continue;
    auto fields = split_commas(line);
    if (fields.size() != 4) {
      throw ParseError(line_no, "expected 4 fields, found " + std::to_string(fields.size()));
    }
    for (std::size_t i = 0; i < 4; ++i) {
      if (fields[i].empty()) throw ParseError(line_no, "empty field " + std::to_string(i + 1));
    }
    ManifestRow row{fields[0], fields[1], fields[2], fields[3], line_no};
    if (row.path.is_relative()) row.path = base_dir / row.path;
    if (auto [it, inserted] = seen.emplace(row.video_id, line_no); !inserted) {
      throw ParseError(line_no, "duplicate video_id '" + row.video_id + "' (first on line " +
                                    std::to_string(it->second) + ")");
    }
    if (check_files && !std::filesystem::is_regular_file(row.path)) {
      throw ParseError(line_no, "missing file " + row.path.string());
    }
    m.rows.push_back(std::move(row));
  }
  if (!have_header) throw ValidationError("missing header");
  return m;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  const std::string text = io::read_text_file(path);
  try {
    return parse_manifest(text, path.parent_path());
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    const auto colon = msg.find(": ");
    throw ParseError(e.line(), path.string() + ": " + (colon == std::string::npos ? msg : msg.substr(colon + 2)));
  }
}

std::string format_manifest(const DatasetManifest& manifest, const std::filesystem::path& base_dir) {
  std::ostringstream out;
  out << kManifestHeader << '\n';
  for (const auto& r : manifest.rows) {
    auto rel = base_dir.empty() ? r.path : std::filesystem::relative(r.path, base_dir);
    out << r.video_id << ',' << rel.generic_string() << ',' << r.label << ',' << r.view << '\n';
  }
  return out.str();
}

}  // namespace rnktm::harness
