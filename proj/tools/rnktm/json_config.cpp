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

#include "json_config.hpp"

#include <json.hpp>

namespace rnktm::cli {
namespace {

std::string scalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

void flatten(const nlohmann::json& obj, std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& out) {
  for (const auto& [key, value] : obj.items()) {
    if (value.is_object()) {
      parents.push_back(key);
      flatten(value, parents, out);
      parents.pop_back();
      continue;
    }
    CLI::ConfigItem item;
    item.parents = parents;
    item.name = key;
    if (value.is_array()) {
      for (const auto& e : value) {
        if (e.is_structured()) throw CLI::ConfigError("config key '" + key + "' holds a nested array or object");
        item.inputs.push_back(scalar(e));
      }
    } else if (value.is_null()) {
      throw CLI::ConfigError("config key '" + key + "' is null");
    } else {
      item.inputs.push_back(scalar(value));
    }
    out.push_back(std::move(item));
  }
}

void dump_options(const CLI::App* app, bool default_also, nlohmann::json& out) {
  for (const CLI::Option* opt : app->get_options()) {
    if (!opt->get_configurable() || opt->get_lnames().empty()) continue;
    const std::string name = opt->get_lnames().front();
    if (name == "help" || name == "config") continue;
    if (opt->count() > 0) {
      const auto& r = opt->results();
      if (r.size() == 1) {
        out[name] = r.front();
      } else {
        out[name] = r;
      }
    } else if (default_also && !opt->get_default_str().empty()) {
      out[name] = opt->get_default_str();
    }
  }
  for (const CLI::App* sub : app->get_subcommands({})) {
    nlohmann::json child = nlohmann::json::object();
    dump_options(sub, default_also, child);
    if (!child.empty()) out[sub->get_name()] = child;
  }
}

}  // namespace

std::string JsonConfig::to_config(const CLI::App* app, bool default_also, bool, std::string) const {
  nlohmann::json out = nlohmann::json::object();
  dump_options(app, default_also, out);
  return out.dump(2) + "\n";
}

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(input);
  } catch (const nlohmann::json::exception& e) {
    throw CLI::ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw CLI::ConfigError("config must be a JSON object");
  std::vector<CLI::ConfigItem> out;
  std::vector<std::string> parents;
  flatten(root, parents, out);
  return out;
}

}  // namespace rnktm::cli
