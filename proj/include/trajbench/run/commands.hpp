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

#include <iosfwd>
#include <string>
#include <vector>

#include "trajbench/run/config.hpp"
#include "trajbench/run/eval.hpp"

namespace trajbench::run {

enum ExitCode : int { kExitOk = 0, kExitPartialFailure = 1, kExitConfigError = 2 };

/// Prints one "subject: message" line per diagnostic to `out`.
int cmd_validate(const std::string& registry_path, std::ostream& out, std::ostream& err);

/// Writes the dataset's action statistics as JSON to `out_path`.
int cmd_stats(const std::string& dataset, const std::string& data_path,
              const std::string& registry_path, const std::string& out_path, std::ostream& err);

/// Runs the evaluation and writes reports plus manifest to config.out_dir.
/// `connect` overrides the adapter given in the config.
int cmd_eval(const RunConfig& config, std::ostream& err, const TransportFactory* connect = nullptr);

/// Renders the manifests' reports as csv, json or md. Markdown shows one
/// column group per manifest, labeled by adapter name.
int cmd_report(const std::vector<std::string>& manifests, const std::string& format,
               std::ostream& out, std::ostream& err);

}  // namespace trajbench::run
