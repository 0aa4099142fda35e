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
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rnktm/network.hpp"

namespace rnktm::harness {

struct CorrelationNorm {
  double cn = 0.0;
  std::vector<std::size_t> constant_rows;  // rows with zero variance
};

// Rows of `rows` are the n per-view vectors. Computes the n x n Pearson
// correlation matrix between rows and returns its Frobenius norm divided by
// n, so identical rows give 1. A constant row correlates 1 with itself and 0
// with every other row, and is listed in constant_rows. Throws
// ValidationError if n < 2.
CorrelationNorm correlation_norm(const Eigen::MatrixXd& rows);

struct LayerCorrelation {
  std::string layer;  // "x", "h1", ...
  CorrelationNorm value;
};

struct CorrelationDiagnostic {
  std::vector<LayerCorrelation> layers;
};

// C_n at x and at every virtual view for one action seen from n views.
CorrelationDiagnostic correlation_diagnostic(const std::vector<Eigen::VectorXd>& view_histograms,
                                             const nktm::NetworkParams& model);

std::string diagnostic_to_json(const CorrelationDiagnostic& d);

}  // namespace rnktm::harness
