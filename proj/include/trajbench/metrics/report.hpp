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

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "trajbench/metrics/metrics.hpp"

namespace trajbench::metrics {

nlohmann::json to_json(const MetricReport& report);
MetricReport metric_report_from_json(const nlohmann::json& j);

inline constexpr const char* kCsvHeader = "dataset,amse,namse,completion_pct,fallback_rate,n";

/// One row per report. Numbers use the shortest text that round-trips;
/// an undefined NAMSE is written as NA.
std::string render_csv(std::span<const MetricReport> reports);

struct CsvRow {
  std::string dataset;
  double amse = 0.0;
  std::optional<double> namse;
  double completion_pct = 0.0;
  double fallback_rate = 0.0;
  std::size_t n = 0;
};
std::vector<CsvRow> parse_csv(const std::string& text);

/// One model's reports, as the column group label of the tables.
struct ModelColumn {
  std::string model;
  std::vector<MetricReport> reports;
};

/// Two markdown tables: AMSE/NAMSE pairs per model, then completion
/// percentage per model, one row per dataset in first-seen order.
std::string render_markdown(std::span<const ModelColumn> models);

}  // namespace trajbench::metrics
