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

#include "trajbench/run/commands.hpp"

#include <filesystem>
#include <ostream>

#include "trajbench/action/stats.hpp"
#include "trajbench/error.hpp"
#include "trajbench/metrics/report.hpp"
#include "trajbench/registry/registry.hpp"
#include "trajbench/serialize.hpp"
#include "trajbench/util.hpp"

namespace trajbench::run {

using nlohmann::json;
namespace fs = std::filesystem;

int cmd_validate(const std::string& registry_path, std::ostream& out, std::ostream& err) {
  std::vector<registry::Diagnostic> diags;
  std::size_t count = 0;
  if (!fs::exists(registry_path)) {
    diags.push_back({registry_path, "file does not exist"});
  } else {
    json doc = json::parse(read_file(registry_path), nullptr, false);
    if (doc.is_discarded()) {
      diags.push_back({registry_path, "not valid JSON"});
    } else {
      diags = registry::validate_registry(doc);
      if (doc.is_object() && doc.contains("datasets") && doc["datasets"].is_array())
        count = doc["datasets"].size();
    }
  }
  for (const auto& d : diags) out << d.subject << ": " << d.message << "\n";
  err << registry_path << ": " << count << " datasets, " << diags.size() << " diagnostics\n";
  return diags.empty() ? kExitOk : kExitConfigError;
}

int cmd_stats(const std::string& dataset, const std::string& data_path,
              const std::string& registry_path, const std::string& out_path, std::ostream& err) {
  registry::Registry reg;
  const registry::DatasetDescriptor* d = nullptr;
  try {
    reg = registry::load_registry(registry_path);
    d = &reg.get(dataset);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  try {
    const auto episodes = load_dataset_episodes(data_path, *d);
    const auto stats = action::compute_action_stats(episodes, d->action_space);
    json j{{"dataset", d->registered_name}, {"stats", trajbench::to_json(stats)}};
    write_file(out_path, j.dump(2) + "\n");
    err << "[" << d->registered_name << "] " << stats.sample_count << " samples -> " << out_path
        << "\n";
    return kExitOk;
  } catch (const Error& e) {
    err << "error: [" << d->registered_name << "] " << e.what() << "\n";
    return kExitPartialFailure;
  }
}

int cmd_eval(const RunConfig& config, std::ostream& err, const TransportFactory* connect) {
  RunManifest manifest;
  try {
    check_run_config(config);
    manifest = run_eval(config, connect ? *connect : default_transport_factory(config));
  } catch (const Error& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  }
  write_run_outputs(manifest, config.out_dir);
  const std::size_t failed = manifest.failures();
  err << manifest.datasets.size() - failed << " of " << manifest.datasets.size()
      << " datasets evaluated; outputs in " << config.out_dir << "\n";
  return failed ? kExitPartialFailure : kExitOk;
}

int cmd_report(const std::vector<std::string>& manifests, const std::string& format,
               std::ostream& out, std::ostream& err) {
  if (format != "csv" && format != "json" && format != "md") {
    err << "error: unknown format '" << format << "' (expected csv, json or md)\n";
    return kExitConfigError;
  }
  std::vector<RunManifest> loaded;
  try {
    for (const auto& path : manifests) loaded.push_back(load_manifest(path));
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  if (format == "md") {
    std::vector<metrics::ModelColumn> cols;
    for (std::size_t i = 0; i < loaded.size(); ++i) {
      metrics::ModelColumn col{"", loaded[i].reports()};
      for (const auto& r : col.reports)
        if (!r.run_metadata.adapter_name.empty()) {
          col.model = r.run_metadata.adapter_name;
          break;
        }
      if (col.model.empty()) col.model = "run" + std::to_string(i + 1);
      cols.push_back(std::move(col));
    }
    out << metrics::render_markdown(cols);
    return kExitOk;
  }
  std::vector<metrics::MetricReport> all;
  for (const auto& m : loaded)
    for (auto& r : m.reports()) all.push_back(std::move(r));
  if (format == "csv") {
    out << metrics::render_csv(all);
  } else {
    json j = json::array();
    for (const auto& r : all) j.push_back(metrics::to_json(r));
    out << j.dump(2) << "\n";
  }
  return kExitOk;
}

}  // namespace trajbench::run
