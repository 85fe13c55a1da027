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

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "trajbench/adapter/transport.hpp"
#include "trajbench/ingest/episode.hpp"
#include "trajbench/metrics/metrics.hpp"
#include "trajbench/registry/registry.hpp"
#include "trajbench/run/config.hpp"

namespace trajbench::run {

/// Opens a fresh adapter connection for one dataset.
using TransportFactory = std::function<std::unique_ptr<adapter::Transport>()>;

TransportFactory default_transport_factory(const RunConfig& config);

struct DatasetOutcome {
  std::string dataset;
  bool ok = false;
  /// Error class name and message for failed datasets.
  std::string error_type;
  std::string error;
  std::optional<metrics::MetricReport> report;
  std::vector<std::string> eval_episode_ids;
  double seconds = 0.0;
};

struct RunManifest {
  nlohmann::json config;
  std::string harness_version;
  int protocol_version = 0;
  std::string input_hash;
  std::vector<std::pair<std::string, std::string>> curation_dropped;
  std::vector<DatasetOutcome> datasets;
  double total_seconds = 0.0;

  std::size_t failures() const;
  std::vector<metrics::MetricReport> reports() const;
};

nlohmann::json to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);
/// Throws MissingManifest when the file does not exist.
RunManifest load_manifest(const std::string& path);

/// Episodes of a dataset from `<data_dir>/<registered_name>.jsonl` or
/// `.tfrecord`; each is validated.
std::string dataset_data_path(const std::string& data_dir, const registry::DatasetDescriptor& d);
std::vector<ingest::EpisodeRecord> load_dataset_episodes(const std::string& path,
                                                         const registry::DatasetDescriptor& d);

/// The registered names a run covers, in registry order, after curation and
/// the dataset filter. Throws UnknownDataset for filter names not in the
/// registry.
std::vector<std::string> select_datasets(const registry::Registry& reg, const RunConfig& config,
                                         std::vector<std::pair<std::string, std::string>>* dropped);

/// FNV-1a 64 over the canonical config, the registry bytes and the data
/// bytes of every selected dataset, each framed by its length.
std::string input_hash(const RunConfig& config, const std::vector<std::string>& data_paths);

/// Evaluates one dataset end to end. Throws on any failure.
DatasetOutcome evaluate_dataset(const RunConfig& config, const registry::DatasetDescriptor& d,
                                const TransportFactory& connect);

/// Runs every selected dataset (concurrently up to config.workers); a failing
/// dataset is recorded and does not affect the others. Does not write files.
RunManifest run_eval(const RunConfig& config, const TransportFactory& connect);

/// Writes report.csv, report.json, report.md and manifest.json under
/// config.out_dir.
void write_run_outputs(const RunManifest& manifest, const std::string& out_dir);

}  // namespace trajbench::run
