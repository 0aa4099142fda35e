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

#include "rnktm/correlation.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "rnktm/error.hpp"

namespace rnktm::harness {

CorrelationNorm correlation_norm(const Eigen::MatrixXd& rows) {
  const auto n = rows.rows();
  if (n < 2) throw ValidationError("correlation needs at least 2 views");
  if (rows.cols() < 1) throw ValidationError("correlation needs non-empty vectors");
  CorrelationNorm out;
  Eigen::MatrixXd centered = rows.colwise() - rows.rowwise().mean();
  Eigen::VectorXd norms = centered.rowwise().norm();
  std::vector<bool> constant(static_cast<std::size_t>(n), false);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double scale = rows.row(i).cwiseAbs().maxCoeff();
    if (norms[i] <= 1e-12 * scale) {
      constant[static_cast<std::size_t>(i)] = true;
      out.constant_rows.push_back(static_cast<std::size_t>(i));
    } else {
      centered.row(i) /= norms[i];
    }
  }
  double sum_sq = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      double r;
      if (constant[static_cast<std::size_t>(i)] || constant[static_cast<std::size_t>(j)]) {
        r = i == j ? 1.0 : 0.0;
      } else {
        r = std::clamp(centered.row(i).dot(centered.row(j)), -1.0, 1.0);
      }
      sum_sq += r * r;
    }
  }
  out.cn = std::sqrt(sum_sq) / static_cast<double>(n);
  return out;
}

CorrelationDiagnostic correlation_diagnostic(const std::vector<Eigen::VectorXd>& views,
                                             const nktm::NetworkParams& model) {
  if (views.size() < 2) throw ValidationError("correlation diagnostic needs at least 2 views");
  const auto n = static_cast<Eigen::Index>(views.size());
  std::vector<Eigen::MatrixXd> stacks;
  stacks.emplace_back(n, static_cast<Eigen::Index>(model.input_dim()));
  for (std::size_t q = 1; q + 1 < model.dims.size(); ++q) stacks.emplace_back(n, static_cast<Eigen::Index>(model.dims[q]));
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& x = views[static_cast<std::size_t>(i)];
    const auto vv = nktm::extract_virtual_views(model, x);
    stacks[0].row(i) = x.transpose();
    for (std::size_t q = 0; q < vv.layers.size(); ++q) stacks[q + 1].row(i) = vv.layers[q].transpose();
  }
  CorrelationDiagnostic d;
  for (std::size_t s = 0; s < stacks.size(); ++s) {
    d.layers.push_back({s == 0 ? std::string("x") : "h" + std::to_string(s), correlation_norm(stacks[s])});
  }
  return d;
}

std::string diagnostic_to_json(const CorrelationDiagnostic& d) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : d.layers) {
    layers.push_back({{"layer", l.layer}, {"cn", l.value.cn}, {"constant_rows", l.value.constant_rows}});
  }
  nlohmann::json j = {{"schema_version", 1},
                      {"cn_definition", "frobenius norm of the row-wise pearson correlation matrix divided by n"},
                      {"layers", layers}};
  return j.dump(2) + "\n";
}

}  // namespace rnktm::harness
