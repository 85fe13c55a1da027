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

#include "trajbench/metrics/report.hpp"

#include <charconv>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "trajbench/error.hpp"
#include "trajbench/serialize.hpp"
#include "trajbench/util.hpp"

namespace trajbench::metrics {

using nlohmann::json;
namespace jf = json_field;

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

double parse_number(const std::string& s) {
  double v = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) throw Error("bad CSV number '" + s + "'");
  return v;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

}  // namespace

json to_json(const MetricReport& r) {
  const RunMetadata& m = r.run_metadata;
  return {
      {"dataset", r.dataset},
      {"display_name", r.display_name},
      {"amse", r.amse},
      {"namse", r.namse ? json(*r.namse) : json(nullptr)},
      {"flat_mse", r.flat_mse},
      {"completion_rate", r.completion_rate},
      {"fallback_rate", r.fallback_rate},
      {"n_trajectories", r.n_trajectories},
      {"n_steps", r.n_steps},
      {"run_metadata",
       {{"seed", m.seed},
        {"protocol_version", m.protocol_version},
        {"adapter_name", m.adapter_name},
        {"mode", m.mode},
        {"epsilon", m.epsilon},
        {"namse_mode", to_string(m.namse_mode)},
        {"namse_degenerate_dims", m.namse_degenerate_dims},
        {"range_violations", m.range_violations},
        {"range_violations_by_dim", m.range_violations_by_dim},
        {"fallbacks_by_reason", m.fallbacks_by_reason},
        {"dropped_images", m.dropped_images},
        {"steps_without_image", m.steps_without_image}}},
  };
}

MetricReport metric_report_from_json(const json& j) {
  MetricReport r;
  r.dataset = jf::string(j, "dataset");
  r.display_name = jf::string_or(j, "display_name", r.dataset);
  r.amse = jf::require(j, "amse").get<double>();
  if (j.contains("namse") && !j["namse"].is_null()) r.namse = j["namse"].get<double>();
  r.flat_mse = j.value("flat_mse", 0.0);
  r.completion_rate = jf::require(j, "completion_rate").get<double>();
  r.fallback_rate = jf::require(j, "fallback_rate").get<double>();
  r.n_trajectories = j.value("n_trajectories", std::size_t{0});
  r.n_steps = j.value("n_steps", std::size_t{0});
  if (j.contains("run_metadata")) {
    const json& m = j["run_metadata"];
    RunMetadata& md = r.run_metadata;
    md.seed = m.value("seed", std::uint64_t{0});
    md.protocol_version = m.value("protocol_version", 0);
    md.adapter_name = m.value("adapter_name", "");
    md.mode = m.value("mode", "");
    md.epsilon = m.value("epsilon", kDefaultCompletionEpsilon);
    md.namse_mode = namse_mode_from_string(m.value("namse_mode", "both"));
    md.namse_degenerate_dims = m.value("namse_degenerate_dims", std::size_t{0});
    md.range_violations = m.value("range_violations", std::size_t{0});
    if (m.contains("range_violations_by_dim"))
      md.range_violations_by_dim =
          m["range_violations_by_dim"].get<std::map<std::string, std::size_t>>();
    if (m.contains("fallbacks_by_reason"))
      md.fallbacks_by_reason = m["fallbacks_by_reason"].get<std::map<std::string, std::size_t>>();
    md.dropped_images = m.value("dropped_images", std::size_t{0});
    md.steps_without_image = m.value("steps_without_image", std::size_t{0});
  }
  return r;
}

std::string render_csv(std::span<const MetricReport> reports) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : reports) {
    out += csv_field(r.dataset) + "," + format_double(r.amse) + "," +
           (r.namse ? format_double(*r.namse) : "NA") + "," +
           format_double(r.completion_rate * 100.0) + "," + format_double(r.fallback_rate) + "," +
           std::to_string(r.n_trajectories) + "\n";
  }
  return out;
}

std::vector<CsvRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw Error("CSV header mismatch");
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 6) throw Error("CSV row has " + std::to_string(f.size()) + " fields");
    CsvRow row;
    row.dataset = f[0];
    row.amse = parse_number(f[1]);
    if (f[2] != "NA") row.namse = parse_number(f[2]);
    row.completion_pct = parse_number(f[3]);
    row.fallback_rate = parse_number(f[4]);
    row.n = static_cast<std::size_t>(parse_number(f[5]));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string render_markdown(std::span<const ModelColumn> models) {
  std::vector<std::string> order;
  std::map<std::string, std::string> display;
  std::vector<std::map<std::string, const MetricReport*>> lookup(models.size());
  std::set<double> epsilons;
  for (std::size_t m = 0; m < models.size(); ++m)
    for (const auto& r : models[m].reports) {
      if (!display.count(r.dataset)) {
        order.push_back(r.dataset);
        display[r.dataset] = r.display_name.empty() ? r.dataset : r.display_name;
      }
      lookup[m][r.dataset] = &r;
      epsilons.insert(r.run_metadata.epsilon);
    }
  auto cell = [&](std::size_t m, const std::string& ds, auto&& f) -> std::string {
    auto it = lookup[m].find(ds);
    return it == lookup[m].end() ? "NA" : f(*it->second);
  };

  std::ostringstream md;
  md << "| Dataset Name |";
  for (const auto& col : models) md << " " << col.model << " AMSE | " << col.model << " NAMSE |";
  md << "\n|---|";
  for (std::size_t m = 0; m < models.size(); ++m) md << "---:|---:|";
  md << "\n";
  for (const auto& ds : order) {
    md << "| " << display[ds] << " |";
    for (std::size_t m = 0; m < models.size(); ++m) {
      md << " " << cell(m, ds, [](const MetricReport& r) { return fixed(r.amse, 3); }) << " |";
      md << " " << cell(m, ds, [](const MetricReport& r) {
        return r.namse ? fixed(*r.namse, 3) : std::string("NA");
      }) << " |";
    }
    md << "\n";
  }

  md << "\n| Dataset Name |";
  for (const auto& col : models) md << " " << col.model << " |";
  md << "\n|---|";
  for (std::size_t m = 0; m < models.size(); ++m) md << "---:|";
  md << "\n";
  for (const auto& ds : order) {
    md << "| " << display[ds] << " |";
    for (std::size_t m = 0; m < models.size(); ++m)
      md << " " << cell(m, ds, [](const MetricReport& r) {
        return fixed(r.completion_rate * 100.0, 3) + "%";
      }) << " |";
    md << "\n";
  }
  md << "\nCompletion epsilon:";
  if (epsilons.empty()) md << " none";
  bool first = true;
  for (double e : epsilons) {
    md << (first ? " " : ", ") << format_double(e);
    first = false;
  }
  md << "\n";
  return md.str();
}

}  // namespace trajbench::metrics
