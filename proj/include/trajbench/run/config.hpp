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

#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "trajbench/adapter/image_prep.hpp"
#include "trajbench/adapter/protocol.hpp"
#include "trajbench/metrics/metrics.hpp"
#include "trajbench/registry/split.hpp"

namespace trajbench::run {

/// Exactly one of `command` (spawned via /bin/sh, or "internal:echo") and
/// `url` is set.
struct AdapterEndpoint {
  std::string command;
  std::string url;
};

struct RunConfig {
  std::string registry_path;
  /// Directory holding one `<registered_name>.jsonl` or `.tfrecord` file per
  /// dataset.
  std::string data_dir;
  /// Registered or display names; empty means every curated dataset.
  std::vector<std::string> datasets;
  AdapterEndpoint adapter;
  adapter::ImagePolicy image_policy = adapter::ImagePolicy::kPrimaryOnly;
  bool four_channel_images = false;
  double split_fraction = registry::kDefaultSplitFraction;
  std::uint64_t split_seed = 0;
  double epsilon = metrics::kDefaultCompletionEpsilon;
  metrics::NamseMode namse_mode = metrics::NamseMode::kBoth;
  /// Seeds the fallback generator; each dataset derives its own stream.
  std::uint64_t seed = 0;
  std::string out_dir;
  adapter::RunMode mode = adapter::RunMode::kEval;
  int workers = 1;
  std::chrono::milliseconds timeout = std::chrono::milliseconds(60000);
  /// Drop redundant and excluded datasets before evaluating.
  bool curate = true;
};

/// Relative paths are resolved against `base_dir`. Unknown fields and bad
/// values throw ConfigError.
RunConfig run_config_from_json(const nlohmann::json& j, const std::string& base_dir = {});
nlohmann::json to_json(const RunConfig& c);

RunConfig load_run_config(const std::string& path);

/// Throws ConfigError describing the first problem.
void check_run_config(const RunConfig& c);

}  // namespace trajbench::run
