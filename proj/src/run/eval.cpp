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

#include "trajbench/run/eval.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <thread>
#include <typeinfo>

#include "trajbench/action/transforms.hpp"
#include "trajbench/adapter/request.hpp"
#include "trajbench/adapter/session.hpp"
#include "trajbench/error.hpp"
#include "trajbench/ingest/assemble.hpp"
#include "trajbench/ingest/jsonl.hpp"
#include "trajbench/metrics/report.hpp"
#include "trajbench/registry/curation.hpp"
#include "trajbench/util.hpp"
#include "trajbench/version.hpp"

namespace trajbench::run {

using nlohmann::json;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

std::mutex log_mutex;

void log(const std::string& line) {
  std::lock_guard lock(log_mutex);
  std::cerr << line << "\n";
}

std::string error_type_name(const std::exception& e) {
  if (dynamic_cast<const HandshakeFailure*>(&e)) return "HandshakeFailure";
  if (dynamic_cast<const TransportClosed*>(&e)) return "TransportClosed";
  if (dynamic_cast<const ChecksumMismatch*>(&e)) return "ChecksumMismatch";
  if (dynamic_cast<const TruncatedRecord*>(&e)) return "TruncatedRecord";
  if (dynamic_cast<const MalformedProto*>(&e)) return "MalformedProto";
  if (dynamic_cast<const MissingRequiredKey*>(&e)) return "MissingRequiredKey";
  if (dynamic_cast<const ImageDecodeError*>(&e)) return "ImageDecodeError";
  if (dynamic_cast<const SchemaViolation*>(&e)) return "SchemaViolation";
  if (dynamic_cast<const EmptyInput*>(&e)) return "EmptyInput";
  if (dynamic_cast<const LengthMismatch*>(&e)) return "LengthMismatch";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const DegenerateRange*>(&e)) return "DegenerateRange";
  if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
  if (dynamic_cast<const Error*>(&e)) return "Error";
  return "InternalError";
}

// Independent fallback stream per dataset.
std::uint64_t dataset_seed(std::uint64_t seed, const std::string& dataset) {
  std::uint8_t le[8];
  for (int i = 0; i < 8; ++i) le[i] = static_cast<std::uint8_t>(seed >> (8 * i));
  return fnv1a64(dataset, fnv1a64(std::span<const std::uint8_t>(le, 8)));
}

std::vector<double> ground_truth_of(const ingest::StepRecord& step,
                                    const action::ActionSpaceSpec& spec, bool strip) {
  auto gt = action::flatten_map(step.action, 0);
  if (gt.size() != spec.size()) throw LengthMismatch(spec.size(), gt.size());
  return strip ? action::strip_terminal(gt, spec) : gt;
}

}  // namespace

std::size_t RunManifest::failures() const {
  std::size_t n = 0;
  for (const auto& d : datasets) n += d.ok ? 0 : 1;
  return n;
}

std::vector<metrics::MetricReport> RunManifest::reports() const {
  std::vector<metrics::MetricReport> out;
  for (const auto& d : datasets)
    if (d.report) out.push_back(*d.report);
  return out;
}

json to_json(const RunManifest& m) {
  json dropped = json::array();
  for (const auto& [name, reason] : m.curation_dropped)
    dropped.push_back({{"dataset", name}, {"reason", reason}});
  json datasets = json::array();
  for (const auto& d : m.datasets) {
    json e{{"dataset", d.dataset},
           {"status", d.ok ? "ok" : "failed"},
           {"eval_episode_ids", d.eval_episode_ids},
           {"seconds", d.seconds}};
    if (!d.ok) {
      e["error_type"] = d.error_type;
      e["error"] = d.error;
    }
    if (d.report) e["report"] = metrics::to_json(*d.report);
    datasets.push_back(std::move(e));
  }
  return {{"harness_version", m.harness_version},
          {"protocol_version", m.protocol_version},
          {"input_hash", m.input_hash},
          {"config", m.config},
          {"curation_dropped", dropped},
          {"datasets", datasets},
          {"timings", {{"total_seconds", m.total_seconds}}}};
}

RunManifest manifest_from_json(const json& j) {
  RunManifest m;
  try {
    m.harness_version = j.value("harness_version", "");
    m.protocol_version = j.value("protocol_version", 0);
    m.input_hash = j.value("input_hash", "");
    m.config = j.value("config", json::object());
    for (const auto& d : j.value("curation_dropped", json::array()))
      m.curation_dropped.emplace_back(d.at("dataset").get<std::string>(),
                                      d.at("reason").get<std::string>());
    for (const auto& e : j.at("datasets")) {
      DatasetOutcome d;
      d.dataset = e.at("dataset").get<std::string>();
      d.ok = e.value("status", "") == "ok";
      d.error_type = e.value("error_type", "");
      d.error = e.value("error", "");
      d.eval_episode_ids = e.value("eval_episode_ids", std::vector<std::string>{});
      d.seconds = e.value("seconds", 0.0);
      if (e.contains("report")) d.report = metrics::metric_report_from_json(e["report"]);
      m.datasets.push_back(std::move(d));
    }
    if (j.contains("timings")) m.total_seconds = j["timings"].value("total_seconds", 0.0);
  } catch (const json::exception& e) {
    throw Error(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

RunManifest load_manifest(const std::string& path) {
  if (!fs::exists(path)) throw MissingManifest(path);
  json j = json::parse(read_file(path), nullptr, false);
  if (j.is_discarded()) throw Error("manifest '" + path + "' is not valid JSON");
  return manifest_from_json(j);
}

std::string dataset_data_path(const std::string& data_dir, const registry::DatasetDescriptor& d) {
  for (const char* ext : {".jsonl", ".tfrecord"}) {
    fs::path p = fs::path(data_dir) / (d.registered_name + ext);
    if (fs::exists(p)) return p.string();
  }
  throw Error("no data file for '" + d.registered_name + "' in '" + data_dir + "'");
}

std::vector<ingest::EpisodeRecord> load_dataset_episodes(const std::string& path,
                                                         const registry::DatasetDescriptor& d) {
  std::vector<ingest::EpisodeRecord> episodes =
      fs::path(path).extension() == ".jsonl"
          ? ingest::load_jsonl_episodes(path)
          : ingest::load_tfrecord_episodes(path, d.key_mapping, d.registered_name);
  for (const auto& e : episodes) ingest::validate_episode(e);
  return episodes;
}

std::vector<std::string> select_datasets(
    const registry::Registry& reg, const RunConfig& config,
    std::vector<std::pair<std::string, std::string>>* dropped) {
  std::vector<registry::DatasetDescriptor> pool = reg.datasets();
  std::vector<std::pair<std::string, std::string>> gone;
  if (config.curate) {
    std::vector<registry::Exclusion> present;
    for (const auto& x : registry::default_exclusions())
      if (reg.find(x.name)) present.push_back(x);
    const auto excluded = registry::exclude_datasets(pool, present);
    gone = excluded.dropped;
    std::erase_if(pool, [&](const auto& d) {
      return std::find(excluded.kept.begin(), excluded.kept.end(), d.registered_name) ==
             excluded.kept.end();
    });
    const auto deduped = registry::dedupe_datasets(pool);
    gone.insert(gone.end(), deduped.dropped.begin(), deduped.dropped.end());
    std::erase_if(pool, [&](const auto& d) {
      return std::find(deduped.kept.begin(), deduped.kept.end(), d.registered_name) ==
             deduped.kept.end();
    });
  }
  std::vector<std::string> names;
  if (config.datasets.empty()) {
    for (const auto& d : pool) names.push_back(d.registered_name);
  } else {
    std::vector<std::string> wanted;
    for (const auto& n : config.datasets) wanted.push_back(reg.get(n).registered_name);
    for (const auto& d : pool)
      if (std::find(wanted.begin(), wanted.end(), d.registered_name) != wanted.end())
        names.push_back(d.registered_name);
    for (const auto& w : wanted)
      if (std::find(names.begin(), names.end(), w) == names.end())
        gone.emplace_back(w, "removed by curation");
  }
  if (dropped) *dropped = std::move(gone);
  return names;
}

std::string input_hash(const RunConfig& config, const std::vector<std::string>& data_paths) {
  std::uint64_t h = kFnvOffsetBasis;
  auto absorb = [&h](std::string_view bytes) {
    const std::string len = std::to_string(bytes.size()) + ":";
    h = fnv1a64(len, h);
    h = fnv1a64(bytes, h);
  };
  absorb(to_json(config).dump());
  absorb(read_file(config.registry_path));
  for (const auto& p : data_paths) absorb(read_file(p));
  return hex64(h);
}

TransportFactory default_transport_factory(const RunConfig& config) {
  return [config] {
    return adapter::make_transport(config.adapter.command, config.adapter.url, config.timeout);
  };
}

DatasetOutcome evaluate_dataset(const RunConfig& config, const registry::DatasetDescriptor& d,
                                const TransportFactory& connect) {
  const auto start = Clock::now();
  DatasetOutcome outcome;
  outcome.dataset = d.registered_name;

  auto episodes = load_dataset_episodes(dataset_data_path(config.data_dir, d), d);
  if (episodes.empty()) throw EmptyInput("dataset '" + d.registered_name + "' has no episodes");
  const action::ActionStats full_stats =
      d.official_stats ? *d.official_stats : action::compute_action_stats(episodes, d.action_space);

  std::vector<const ingest::EpisodeRecord*> eval;
  if (d.has_predefined_eval_split) {
    for (const auto& e : episodes) eval.push_back(&e);
    std::sort(eval.begin(), eval.end(),
              [](const auto* a, const auto* b) { return a->episode_id < b->episode_id; });
  } else {
    std::vector<std::string> ids;
    for (const auto& e : episodes) ids.push_back(e.episode_id);
    const auto split =
        registry::make_eval_split(d, ids, config.split_fraction, config.split_seed);
    for (const auto& id : split.episode_ids)
      for (const auto& e : episodes)
        if (e.episode_id == id) {
          eval.push_back(&e);
          break;
        }
  }
  for (const auto* e : eval) outcome.eval_episode_ids.push_back(e->episode_id);

  const bool strip = d.conversions.strip_terminal && d.action_space.terminal_count() > 0;
  adapter::RequestContext ctx;
  ctx.dataset = d.registered_name;
  ctx.mapping = d.key_mapping;
  ctx.action_space = strip ? d.action_space.without_terminal() : d.action_space;
  ctx.action_stats =
      strip ? full_stats.select(action::non_terminal_indices(d.action_space)) : full_stats;
  ctx.task_description = d.task_description;
  ctx.image_policy = config.image_policy;
  ctx.four_channel_images = config.four_channel_images;
  const bool verify = config.mode == adapter::RunMode::kVerify;

  std::vector<adapter::AdapterRequest> requests;
  std::vector<std::vector<double>> truths;
  std::size_t missing_images = 0;
  for (const auto* e : eval)
    for (std::size_t s = 0; s < e->steps.size(); ++s) {
      auto gt = ground_truth_of(e->steps[s], d.action_space, strip);
      requests.push_back(adapter::build_request(
          ctx, *e, s, verify ? std::optional(gt) : std::nullopt, &missing_images));
      truths.push_back(std::move(gt));
    }

  adapter::SessionOptions options{config.mode, config.timeout,
                                  dataset_seed(config.seed, d.registered_name)};
  adapter::SessionStats stats;
  adapter::ReadyInfo ready;
  const auto outcomes = adapter::run_adapter_session(connect(), requests, options, &stats, &ready);

  action::RangeViolations violations;
  std::vector<metrics::TrajectoryPairs> trajectories;
  std::size_t k = 0;
  for (const auto* e : eval) {
    metrics::TrajectoryPairs t{e->episode_id, {}};
    for (std::size_t s = 0; s < e->steps.size(); ++s, ++k) {
      std::vector<double> pred =
          verify ? outcomes[k].action
                 : action::apply_conversions(outcomes[k].action, ctx.action_space,
                                             ctx.action_stats, d.conversions, violations);
      t.steps.push_back({std::move(pred), truths[k], outcomes[k].used_fallback});
    }
    trajectories.push_back(std::move(t));
  }

  metrics::RunMetadata md;
  md.seed = config.seed;
  md.protocol_version = adapter::kProtocolVersion;
  md.adapter_name = ready.name;
  md.mode = adapter::to_string(config.mode);
  md.range_violations = violations.total;
  md.range_violations_by_dim = violations.by_dim;
  for (const auto& [reason, n] : stats.fallbacks_by_reason)
    md.fallbacks_by_reason[adapter::to_string(reason)] = n;
  md.dropped_images = stats.dropped_images;
  md.steps_without_image = missing_images;

  outcome.report = metrics::aggregate_report(d.registered_name, d.name, trajectories,
                                             config.epsilon, config.namse_mode, std::move(md));
  outcome.ok = true;
  outcome.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return outcome;
}

RunManifest run_eval(const RunConfig& config, const TransportFactory& connect) {
  const auto start = Clock::now();
  check_run_config(config);
  const registry::Registry reg = registry::load_registry(config.registry_path);

  RunManifest m;
  m.config = to_json(config);
  m.harness_version = kHarnessVersion;
  m.protocol_version = adapter::kProtocolVersion;
  const auto names = select_datasets(reg, config, &m.curation_dropped);

  std::vector<std::string> paths;
  for (const auto& n : names) {
    try {
      paths.push_back(dataset_data_path(config.data_dir, reg.get(n)));
    } catch (const Error&) {
      // Reported as that dataset's failure below.
    }
  }
  m.input_hash = input_hash(config, paths);

  m.datasets.resize(names.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < names.size(); i = next++) {
      const auto t0 = Clock::now();
      const auto& d = reg.get(names[i]);
      log("[" + d.registered_name + "] evaluating");
      try {
        m.datasets[i] = evaluate_dataset(config, d, connect);
        const auto& r = *m.datasets[i].report;
        log("[" + d.registered_name + "] amse=" + format_double(r.amse) +
            " fallback_rate=" + format_double(r.fallback_rate));
      } catch (const std::exception& e) {
        DatasetOutcome& o = m.datasets[i];
        o = DatasetOutcome{};
        o.dataset = d.registered_name;
        o.error_type = error_type_name(e);
        o.error = e.what();
        o.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        log("[" + d.registered_name + "] failed: " + o.error_type + ": " + o.error);
      }
    }
  };
  const std::size_t n_workers =
      std::min<std::size_t>(static_cast<std::size_t>(config.workers), std::max<std::size_t>(names.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  m.total_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return m;
}

void write_run_outputs(const RunManifest& manifest, const std::string& out_dir) {
  fs::create_directories(out_dir);
  const auto reports = manifest.reports();
  write_file((fs::path(out_dir) / "report.csv").string(), metrics::render_csv(reports));
  json rj = json::array();
  for (const auto& r : reports) rj.push_back(metrics::to_json(r));
  write_file((fs::path(out_dir) / "report.json").string(), rj.dump(2) + "\n");
  std::string model = "adapter";
  for (const auto& r : reports)
    if (!r.run_metadata.adapter_name.empty()) {
      model = r.run_metadata.adapter_name;
      break;
    }
  const metrics::ModelColumn col{model, reports};
  write_file((fs::path(out_dir) / "report.md").string(),
             metrics::render_markdown(std::span(&col, 1)));
  write_file((fs::path(out_dir) / "manifest.json").string(), to_json(manifest).dump(2) + "\n");
}

}  // namespace trajbench::run
