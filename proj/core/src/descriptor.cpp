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

#include "rnktm/descriptor.hpp"

#include <string>

#include "rnktm/error.hpp"

namespace rnktm::desc {

Eigen::VectorXd CrossViewDescriptor::block(std::size_t i) const {
  if (i + 1 >= offsets.size()) throw ValidationError("descriptor block index out of range");
  return values.segment(static_cast<Eigen::Index>(offsets[i]),
                        static_cast<Eigen::Index>(offsets[i + 1] - offsets[i]));
}

std::size_t descriptor_length(std::span<const std::size_t> dims, std::size_t depth) {
  if (dims.size() < 2 || depth + 1 >= dims.size()) {
    throw ValidationError("depth " + std::to_string(depth) + " exceeds the available virtual views");
  }
  std::size_t n = 0;
  for (std::size_t q = 0; q <= depth; ++q) n += dims[q];
  return n;
}

CrossViewDescriptor build_cross_view_descriptor(const Eigen::VectorXd& x, const nktm::VirtualViews& views,
                                                std::size_t depth, std::span<const std::size_t> dims) {
  const std::size_t total = descriptor_length(dims, depth);
  if (views.layers.size() < depth) {
    throw ValidationError("only " + std::to_string(views.layers.size()) + " virtual views for depth " +
                          std::to_string(depth));
  }
  if (x.size() != static_cast<Eigen::Index>(dims[0])) {
    throw ValidationError("histogram has " + std::to_string(x.size()) + " bins, model expects " +
                          std::to_string(dims[0]));
  }
  CrossViewDescriptor d;
  d.values.resize(static_cast<Eigen::Index>(total));
  d.offsets.push_back(0);
  d.values.head(x.size()) = x;
  std::size_t pos = dims[0];
  for (std::size_t q = 1; q <= depth; ++q) {
    const auto& h = views.layers[q - 1];
    if (h.size() != static_cast<Eigen::Index>(dims[q])) {
      throw ValidationError("virtual view " + std::to_string(q) + " has wrong dimension");
    }
    d.offsets.push_back(pos);
    d.values.segment(static_cast<Eigen::Index>(pos), h.size()) = h;
    pos += dims[q];
  }
  d.offsets.push_back(pos);
  return d;
}

CrossViewDescriptor describe(const nktm::NetworkParams& params, const Eigen::VectorXd& x, std::size_t depth) {
  return build_cross_view_descriptor(x, nktm::extract_virtual_views(params, x), depth, params.dims);
}

}  // namespace rnktm::desc
