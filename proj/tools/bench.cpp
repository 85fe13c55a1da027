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

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trajbench/error.hpp"
#include "trajbench/run/commands.hpp"
#include "trajbench/version.hpp"

namespace {

using trajbench::run::RunConfig;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  namespace run = trajbench::run;
  CLI::App app{"Offline action-prediction benchmark harness"};
  app.set_version_flag("--version", trajbench::kHarnessVersion);
  app.require_subcommand(1);

  auto* validate = app.add_subcommand("validate", "Check a dataset registry");
  std::string registry_path;
  validate->add_option("registry", registry_path, "Registry JSON file")->required();

  auto* stats = app.add_subcommand("stats", "Compute action statistics for one dataset");
  std::string stats_dataset, stats_path, stats_registry = "data/registry.json", stats_out;
  stats->add_option("dataset", stats_dataset, "Registered or display name")->required();
  stats->add_option("path", stats_path, "Episode file (.jsonl or .tfrecord)")->required();
  stats->add_option("--registry", stats_registry, "Registry JSON file")->capture_default_str();
  stats->add_option("--out", stats_out, "Output file (default <dataset>.stats.json)");

  auto* eval = app.add_subcommand("eval", "Evaluate an adapter on the registry datasets");
  std::string config_path;
  std::optional<std::string> registry, data_dir, adapter_cmd, adapter_url, datasets, image_policy,
      namse_mode, mode, out;
  std::optional<std::uint64_t> seed, split_seed;
  std::optional<double> epsilon, split_fraction;
  std::optional<int> workers;
  std::optional<long long> timeout_ms;
  std::optional<bool> four_channel, curate;
  eval->add_option("--config", config_path, "Run config JSON");
  eval->add_option("--registry", registry, "Registry JSON file");
  eval->add_option("--data-dir", data_dir, "Directory of per-dataset episode files");
  auto* cmd_opt = eval->add_option("--adapter-cmd", adapter_cmd,
                                   "Adapter command spawned via /bin/sh, or internal:echo");
  auto* url_opt = eval->add_option("--adapter-url", adapter_url, "Adapter HTTP endpoint");
  cmd_opt->excludes(url_opt);
  eval->add_option("--datasets", datasets, "Comma-separated dataset filter");
  eval->add_option("--seed", seed, "Fallback RNG seed");
  eval->add_option("--split-seed", split_seed, "Evaluation split seed");
  eval->add_option("--split-fraction", split_fraction, "Held-out fraction per dataset");
  eval->add_option("--epsilon", epsilon, "Completion tolerance");
  eval->add_option("--namse-mode", namse_mode, "both or predictions_only");
  eval->add_option("--image-policy", image_policy, "primary_only or all_views");
  eval->add_option("--four-channel", four_channel, "Expand images to 4 channels");
  eval->add_option("--mode", mode, "eval or verify");
  eval->add_option("--workers", workers, "Datasets evaluated concurrently");
  eval->add_option("--timeout-ms", timeout_ms, "Per-request adapter timeout");
  eval->add_option("--curate", curate, "Apply deduplication and exclusions");
  eval->add_option("--out", out, "Output directory");

  auto* report = app.add_subcommand("report", "Render reports from run manifests");
  std::vector<std::string> manifests;
  std::string format = "md";
  report->add_option("manifest", manifests, "manifest.json files")->required();
  report->add_option("--format", format, "csv, json or md")
      ->check(CLI::IsMember({"csv", "json", "md"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : run::kExitConfigError;
  }

  if (validate->parsed()) return run::cmd_validate(registry_path, std::cout, std::cerr);

  if (stats->parsed()) {
    if (stats_out.empty()) stats_out = stats_dataset + ".stats.json";
    return run::cmd_stats(stats_dataset, stats_path, stats_registry, stats_out, std::cerr);
  }

  if (report->parsed()) return run::cmd_report(manifests, format, std::cout, std::cerr);

  RunConfig config;
  try {
    if (!config_path.empty()) config = run::load_run_config(config_path);
    if (registry) config.registry_path = *registry;
    if (data_dir) config.data_dir = *data_dir;
    if (adapter_cmd) config.adapter = {*adapter_cmd, ""};
    if (adapter_url) config.adapter = {"", *adapter_url};
    if (datasets) config.datasets = split_list(*datasets);
    if (seed) config.seed = *seed;
    if (split_seed) config.split_seed = *split_seed;
    if (split_fraction) config.split_fraction = *split_fraction;
    if (epsilon) config.epsilon = *epsilon;
    if (namse_mode) config.namse_mode = trajbench::metrics::namse_mode_from_string(*namse_mode);
    if (image_policy)
      config.image_policy = trajbench::adapter::image_policy_from_string(*image_policy);
    if (four_channel) config.four_channel_images = *four_channel;
    if (mode) config.mode = trajbench::adapter::run_mode_from_string(*mode);
    if (workers) config.workers = *workers;
    if (timeout_ms) config.timeout = std::chrono::milliseconds(*timeout_ms);
    if (curate) config.curate = *curate;
    if (out) config.out_dir = *out;
  } catch (const trajbench::Error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return run::kExitConfigError;
  }
  return run::cmd_eval(config, std::cerr);
}
