// Copyright 2026 The trajbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trajbench/run/config.hpp"

#include <filesystem>
#include <set>

#include "trajbench/error.hpp"
#include "trajbench/util.hpp"

namespace trajbench::run {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string resolve(const std::string& path, const std::string& base) {
  if (path.empty() || base.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base) / path).lexically_normal().string();
}

template <typename T>
T get_as(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

}  // namespace

RunConfig run_config_from_json(const json& j, const std::string& base_dir) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known = {
      "registry",     "data_dir",   "datasets", "adapter_cmd", "adapter_url",
      "image_policy", "four_channel_images", "split_fraction", "split_seed",
      "epsilon",      "namse_mode", "seed",     "out",          "mode",
      "workers",      "timeout_ms", "curate"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw ConfigError("unknown config field '" + k + "'");

  RunConfig c;
  try {
    if (j.contains("registry")) c.registry_path = resolve(get_as<std::string>(j, "registry"), base_dir);
    if (j.contains("data_dir")) c.data_dir = resolve(get_as<std::string>(j, "data_dir"), base_dir);
    if (j.contains("datasets")) c.datasets = get_as<std::vector<std::string>>(j, "datasets");
    if (j.contains("adapter_cmd")) c.adapter.command = get_as<std::string>(j, "adapter_cmd");
    if (j.contains("adapter_url")) c.adapter.url = get_as<std::string>(j, "adapter_url");
    if (j.contains("image_policy"))
      c.image_policy = adapter::image_policy_from_string(get_as<std::string>(j, "image_policy"));
    if (j.contains("four_channel_images"))
      c.four_channel_images = get_as<bool>(j, "four_channel_images");
    if (j.contains("split_fraction")) c.split_fraction = get_as<double>(j, "split_fraction");
    if (j.contains("split_seed")) c.split_seed = get_as<std::uint64_t>(j, "split_seed");
    if (j.contains("epsilon")) c.epsilon = get_as<double>(j, "epsilon");
    if (j.contains("namse_mode"))
      c.namse_mode = metrics::namse_mode_from_string(get_as<std::string>(j, "namse_mode"));
    if (j.contains("seed")) c.seed = get_as<std::uint64_t>(j, "seed");
    if (j.contains("out")) c.out_dir = resolve(get_as<std::string>(j, "out"), base_dir);
    if (j.contains("mode")) c.mode = adapter::run_mode_from_string(get_as<std::string>(j, "mode"));
    if (j.contains("workers")) c.workers = get_as<int>(j, "workers");
    if (j.contains("timeout_ms"))
      c.timeout = std::chrono::milliseconds(get_as<long long>(j, "timeout_ms"));
    if (j.contains("curate")) c.curate = get_as<bool>(j, "curate");
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return c;
}

json to_json(const RunConfig& c) {
  json j{
      {"registry", c.registry_path},
      {"data_dir", c.data_dir},
      {"datasets", c.datasets},
      {"image_policy", adapter::to_string(c.image_policy)},
      {"four_channel_images", c.four_channel_images},
      {"split_fraction", c.split_fraction},
      {"split_seed", c.split_seed},
      {"epsilon", c.epsilon},
      {"namse_mode", metrics::to_string(c.namse_mode)},
      {"seed", c.seed},
      {"out", c.out_dir},
      {"mode", adapter::to_string(c.mode)},
      {"workers", c.workers},
      {"timeout_ms", c.timeout.count()},
      {"curate", c.curate},
  };
  if (!c.adapter.command.empty()) j["adapter_cmd"] = c.adapter.command;
  if (!c.adapter.url.empty()) j["adapter_url"] = c.adapter.url;
  return j;
}

RunConfig load_run_config(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config '" + path + "' is not valid JSON");
  return run_config_from_json(j, fs::path(path).parent_path().string());
}

void check_run_config(const RunConfig& c) {
  if (c.registry_path.empty()) throw ConfigError("no registry path given");
  if (c.data_dir.empty()) throw ConfigError("no data directory given");
  if (c.out_dir.empty()) throw ConfigError("no output directory given");
  if (c.adapter.command.empty() == c.adapter.url.empty())
    throw ConfigError("give exactly one of an adapter command or an adapter URL");
  if (!(c.split_fraction > 0.0 && c.split_fraction < 1.0))
    throw ConfigError("split fraction must lie in (0, 1)");
  if (!(c.epsilon >= 0.0)) throw ConfigError("epsilon must be >= 0");
  if (c.workers < 1) throw ConfigError("workers must be >= 1");
  if (c.timeout.count() <= 0) throw ConfigError("timeout must be positive");
}

}  // namespace trajbench::run
