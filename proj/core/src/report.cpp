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

#include "rnktm/report.hpp"

#include <cstdio>

#include <json.hpp>

#include "rnktm/binary_io.hpp"
#include "rnktm/error.hpp"

namespace rnktm::harness {
namespace {

using nlohmann::json;

json accuracy_json(const Accuracy& a) {
  return {{"correct", a.correct}, {"total", a.total}, {"value", a.value()}};
}

Accuracy accuracy_from(const json& j) { return {j.at("correct").get<std::size_t>(), j.at("total").get<std::size_t>()}; }

}  // namespace

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

double mean_cell_accuracy(const std::vector<CellResult>& cells) {
  if (cells.empty()) return 0.0;
  double s = 0.0;
  for (const auto& c : cells) s += c.accuracy.value();
  return s / static_cast<double>(cells.size());
}

void check_consistency(const CellResult& cell) {
  const std::size_t k = cell.confusion.size();
  if (!cell.per_class.empty() && cell.per_class.size() != k) {
    throw ValidationError("per-class accuracies do not match the confusion matrix");
  }
  for (const auto& row : cell.confusion) {
    if (row.size() != k) throw ValidationError("confusion matrix is not square");
  }
  std::size_t trace = 0;
  std::size_t total = 0;
  for (std::size_t r = 0; r < k; ++r) {
    std::size_t row = 0;
    for (auto v : cell.confusion[r]) row += v;
    if (r < cell.per_class.size() && row != cell.per_class[r].accuracy.total) {
      throw ValidationError("confusion row " + std::to_string(r) + " does not match the class count");
    }
    trace += cell.confusion[r][r];
    total += row;
  }
  if (trace != cell.accuracy.correct || total != cell.accuracy.total) {
    throw ValidationError("accuracy does not equal the normalised confusion trace");
  }
}

std::string report_to_json(const EvalReport& r) {
  json cells = json::array();
  for (const auto& c : r.cells) {
    json per_class = json::array();
    for (const auto& pc : c.per_class) per_class.push_back({{"label", pc.label}, {"accuracy", accuracy_json(pc.accuracy)}});
    json per_depth = json::array();
    for (const auto& pd : c.per_depth) per_depth.push_back({{"depth", pd.depth}, {"accuracy", accuracy_json(pd.accuracy)}});
    cells.push_back({{"source", c.source},
                     {"target", c.target},
                     {"depth", c.depth},
                     {"accuracy", accuracy_json(c.accuracy)},
                     {"per_class", per_class},
                     {"confusion", c.confusion},
                     {"per_depth", per_depth}});
  }
  json j = {{"schema_version", r.schema_version},
            {"config_hash", r.config_hash},
            {"seeds", r.seeds},
            {"classes", r.classes},
            {"cells", cells},
            {"mean_accuracy", r.mean_accuracy}};
  return j.dump(2) + "\n";
}

EvalReport report_from_json(std::string_view text) {
  EvalReport r;
  try {
    const json j = json::parse(text);
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != EvalReport::kSchemaVersion) {
      throw FormatError("report: unsupported schema version " + std::to_string(r.schema_version));
    }
    r.config_hash = j.at("config_hash").get<std::string>();
    r.seeds = j.at("seeds").get<std::map<std::string, std::uint64_t>>();
    r.classes = j.at("classes").get<std::vector<std::string>>();
    for (const auto& jc : j.at("cells")) {
      CellResult c;
      c.source = jc.at("source").get<std::vector<std::string>>();
      c.target = jc.at("target").get<std::vector<std::string>>();
      c.depth = jc.at("depth").get<std::size_t>();
      c.accuracy = accuracy_from(jc.at("accuracy"));
      for (const auto& pc : jc.at("per_class")) {
        c.per_class.push_back({pc.at("label").get<std::string>(), accuracy_from(pc.at("accuracy"))});
      }
      c.confusion = jc.at("confusion").get<std::vector<std::vector<std::size_t>>>();
      for (const auto& pd : jc.at("per_depth")) {
        c.per_depth.push_back({pd.at("depth").get<std::size_t>(), accuracy_from(pd.at("accuracy"))});
      }
      r.cells.push_back(std::move(c));
    }
    r.mean_accuracy = j.at("mean_accuracy").get<double>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("report: ") + e.what());
  }
  return r;
}

void save_report(const EvalReport& report, const std::filesystem::path& path) {
  io::write_text_file(path, report_to_json(report));
}

EvalReport load_report(const std::filesystem::path& path) { return report_from_json(io::read_text_file(path)); }

}  // namespace rnktm::harness
