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
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace rnktm::harness {

struct Accuracy {
  std::size_t correct = 0;
  std::size_t total = 0;
  double value() const { return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total); }
  bool operator==(const Accuracy&) const = default;
};

struct ClassAccuracy {
  std::string label;
  Accuracy accuracy;
  bool operator==(const ClassAccuracy&) const = default;
};

struct DepthAccuracy {
  std::size_t depth = 0;
  Accuracy accuracy;
  bool operator==(const DepthAccuracy&) const = default;
};

struct CellResult {
  std::vector<std::string> source;
  std::vector<std::string> target;
  std::size_t depth = 0;
  Accuracy accuracy;
  std::vector<ClassAccuracy> per_class;
  // confusion[true][predicted], indexed by EvalReport::classes
  std::vector<std::vector<std::size_t>> confusion;
  std::vector<DepthAccuracy> per_depth;
  bool operator==(const CellResult&) const = default;
};

struct EvalReport {
  static constexpr int kSchemaVersion = 1;
  int schema_version = kSchemaVersion;
  std::string config_hash;
  std::map<std::string, std::uint64_t> seeds;
  std::vector<std::string> classes;
  std::vector<CellResult> cells;
  double mean_accuracy = 0.0;
  bool operator==(const EvalReport&) const = default;
};

// 64-bit FNV-1a as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view data);

// Mean of the cell accuracies.
double mean_cell_accuracy(const std::vector<CellResult>& cells);

// Throws ValidationError if the confusion matrix is not square, a row does not
// sum to its class count, or the overall accuracy differs from the trace.
void check_consistency(const CellResult& cell);

std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(std::string_view json);
void save_report(const EvalReport& report, const std::filesystem::path& path);
EvalReport load_report(const std::filesystem::path& path);

}  // namespace rnktm::harness
