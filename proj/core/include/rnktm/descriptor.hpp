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
#include <span>
#include <vector>

#include <Eigen/Core>

#include "rnktm/network.hpp"

namespace rnktm::desc {

// [x, h(1), ..., h(depth)] with the start of each block recorded.
struct CrossViewDescriptor {
  Eigen::VectorXd values;
  std::vector<std::size_t> offsets;  // block starts, plus the total length at the end

  std::size_t depth() const { return offsets.size() - 2; }
  std::size_t block_count() const { return offsets.size() - 1; }
  Eigen::VectorXd block(std::size_t i) const;
};

// `dims` are the model's layer widths p(0) ... p(Q). Throws ValidationError if
// depth exceeds the number of virtual views or any block has the wrong size.
CrossViewDescriptor build_cross_view_descriptor(const Eigen::VectorXd& x, const nktm::VirtualViews& views,
                                                std::size_t depth, std::span<const std::size_t> dims);

// extract_virtual_views followed by build_cross_view_descriptor.
CrossViewDescriptor describe(const nktm::NetworkParams& params, const Eigen::VectorXd& x, std::size_t depth);

// Length of a depth-`depth` descriptor for the given widths.
std::size_t descriptor_length(std::span<const std::size_t> dims, std::size_t depth);

}  // namespace rnktm::desc
