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

#include <cstdint>
#include <functional>
#include <map>

#include <CLI11.hpp>

namespace rnktm::cli {

struct Globals {
  std::uint64_t seed = 0;
};

using Handler = std::function<void()>;

// Registers every subcommand on `app`; `handlers` maps each one to its action.
void add_commands(CLI::App& app, const Globals& globals, std::map<const CLI::App*, Handler>& handlers);

}  // namespace rnktm::cli
