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

#include <exception>
#include <iostream>
#include <map>
#include <memory>

#include <CLI11.hpp>

#include "commands.hpp"
#include "json_config.hpp"
#include "rnktm/error.hpp"

int main(int argc, char** argv) {
  using namespace rnktm::cli;
  CLI::App app{"rnktm: cross-view action recognition pipeline"};
  app.require_subcommand(1);
  app.fallthrough();
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file with option values");
  app.allow_config_extras(CLI::config_extras_mode::error);

  Globals globals;
  app.add_option("--seed", globals.seed, "Seed for every random choice")->capture_default_str();

  std::map<const CLI::App*, Handler> handlers;
  add_commands(app, globals, handlers);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    for (const CLI::App* sub : app.get_subcommands()) handlers.at(sub)();
  } catch (const rnktm::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "fault: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
