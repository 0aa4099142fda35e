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

#include <filesystem>

#include <gtest/gtest.h>

#include "rnktm/error.hpp"
#include "rnktm/report.hpp"

namespace rnktm::harness {
namespace {

CellResult sample_cell() {
  CellResult c;
  c.source = {"cam0", "cam1"};
  c.target = {"cam2"};
  c.depth = 3;
  c.confusion = {{3, 1}, {0, 4}};
  c.per_class = {{"walk", {3, 4}}, {"wave", {4, 4}}};
  c.accuracy = {7, 8};
  c.per_depth = {{0, {5, 8}}, {3, {7, 8}}};
  return c;
}

EvalReport sample_report() {
  EvalReport r;
  r.config_hash = fnv1a_hex("cfg");
  r.seeds = {{"svm", 4}, {"codebook", 18446744073709551615ull}};
  r.classes = {"walk", "wave"};
  r.cells = {sample_cell(), sample_cell()};
  r.cells[1].target = {"cam3"};
  r.cells[1].accuracy = {6, 8};
  r.cells[1].confusion = {{2, 2}, {0, 4}};
  r.cells[1].per_class[0].accuracy = {2, 4};
  r.mean_accuracy = mean_cell_accuracy(r.cells);
  return r;
}

TEST(Fnv1a, KnownVectors) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(fnv1a_hex("foobar"), "85944171f73967e8");
}

TEST(Report, MeanOfCellAccuracies) {
  const auto r = sample_report();
  EXPECT_DOUBLE_EQ(r.mean_accuracy, (7.0 / 8.0 + 6.0 / 8.0) / 2.0);
}

TEST(Report, JsonRoundTrip) {
  const auto r = sample_report();
  const auto back = report_from_json(report_to_json(r));
  EXPECT_EQ(back, r);
}

TEST(Report, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "rnktm_report_roundtrip.json";
  save_report(sample_report(), path);
  EXPECT_EQ(load_report(path), sample_report());
  std::filesystem::remove(path);
}

TEST(Report, RejectsOtherSchemaVersionsAndBadJson) {
  auto json = report_to_json(sample_report());
  const auto pos = json.find("\"schema_version\"");
  ASSERT_NE(pos, std::string::npos);
  const auto colon = json.find(':', pos);
  const auto end = json.find_first_of(",}", colon);
  json.replace(colon + 1, end - colon - 1, "2");
  EXPECT_THROW(report_from_json(json), FormatError);
  EXPECT_THROW(report_from_json("{not json"), FormatError);
}

TEST(CheckConsistency, CatchesMismatches) {
  auto c = sample_cell();
  EXPECT_NO_THROW(check_consistency(c));
  c.accuracy = {6, 8};
  EXPECT_THROW(check_consistency(c), ValidationError);
  c = sample_cell();
  c.confusion[1].push_back(0);
  EXPECT_THROW(check_consistency(c), ValidationError);
}

}  // namespace
}  // namespace rnktm::harness
