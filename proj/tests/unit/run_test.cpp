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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "trajbench/adapter/transport.hpp"
#include "trajbench/error.hpp"
#include "trajbench/ingest/jsonl.hpp"
#include "trajbench/metrics/report.hpp"
#include "trajbench/registry/registry.hpp"
#include "trajbench/run/commands.hpp"
#include "trajbench/run/eval.hpp"
#include "trajbench/serialize.hpp"
#include "trajbench/util.hpp"

using namespace trajbench;
using namespace trajbench::run;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string kSource = TRAJBENCH_SOURCE_DIR;
const std::string kRegistry = kSource + "/data/registry.json";
const std::string kFixtures = kSource + "/data/fixtures";

RunConfig verify_config(const fs::path& out) {
  RunConfig c;
  c.registry_path = kRegistry;
  c.data_dir = kFixtures;
  c.adapter.command = adapter::kInternalEchoCommand;
  c.mode = adapter::RunMode::kVerify;
  c.out_dir = out.string();
  c.timeout = std::chrono::milliseconds(5000);
  return c;
}

RunConfig stdio_config(const fs::path& out, const std::string& flags) {
  RunConfig c = verify_config(out);
  c.adapter.command = std::string(TRAJBENCH_TEST_ADAPTER) + " " + flags;
  c.mode = adapter::RunMode::kEval;
  return c;
}

std::string csv_of(const fs::path& dir) { return read_file((dir / "report.csv").string()); }

// A one-dataset registry whose actions are all zero, with a predefined split
// so every episode is evaluated.
fs::path zero_dataset(const fs::path& dir, std::size_t episodes, std::size_t steps, int dims) {
  registry::DatasetDescriptor d;
  d.name = "Zeros";
  d.registered_name = "zeros";
  d.robot_model = "Synthetic";
  d.gripper_spec = "None";
  d.action_signature = std::to_string(dims) + "D (" + std::to_string(dims) + " pos)";
  d.action_space = action::ActionSpaceSpec::from_signature(action::parse_signature(d.action_signature));
  d.episode_count = episodes;
  d.key_mapping.action_keys = {"action"};
  d.key_mapping.observation_keys = {"state"};
  d.has_predefined_eval_split = true;
  registry::save_registry(registry::Registry({d}), (dir / "registry.json").string());

  std::ofstream out(dir / "zeros.jsonl");
  for (std::size_t e = 0; e < episodes; ++e) {
    ingest::EpisodeRecord ep;
    ep.episode_id = "z" + std::to_string(e);
    for (std::size_t s = 0; s < steps; ++s) {
      ingest::StepRecord st;
      st.observation["state"] = std::vector<double>{double(s)};
      st.action["action"] = std::vector<double>(static_cast<std::size_t>(dims), 0.0);
      ep.steps.push_back(st);
    }
    out << ingest::episode_to_jsonl(ep) << "\n";
  }
  return dir / "registry.json";
}

}  // namespace

TEST_SUITE("run") {

TEST_CASE("replay endpoint scores every bundled fixture perfectly") {
  const auto out = oracle::temp_dir("replay");
  std::ostringstream err;
  REQUIRE(cmd_eval(verify_config(out), err) == kExitOk);
  const auto manifest = load_manifest((out / "manifest.json").string());
  CHECK(manifest.datasets.size() == 20);
  CHECK(manifest.failures() == 0);
  for (const auto& r : manifest.reports()) {
    CHECK(r.amse == 0.0);
    CHECK(r.completion_rate == 1.0);
    CHECK(r.fallback_rate == 0.0);
  }
  for (const char* f : {"report.csv", "report.json", "report.md", "manifest.json"})
    CHECK(fs::exists(out / f));
}

TEST_CASE("stdio replay adapter matches the internal endpoint") {
  const auto a = oracle::temp_dir("replay_a"), b = oracle::temp_dir("replay_b");
  std::ostringstream err;
  auto cfg = stdio_config(b, "--policy replay");
  cfg.mode = adapter::RunMode::kVerify;
  cfg.datasets = {"jaco_play", "toto", "Berkeley Autolab UR5"};
  auto internal = verify_config(a);
  internal.datasets = cfg.datasets;
  REQUIRE(cmd_eval(internal, err) == kExitOk);
  REQUIRE(cmd_eval(cfg, err) == kExitOk);
  CHECK(csv_of(a) == csv_of(b));
}

TEST_CASE("uniform adapter against zero actions gives about 1/3") {
  const auto dir = oracle::temp_dir("zeros");
  auto cfg = stdio_config(dir / "out", "--policy random --seed 5");
  cfg.registry_path = zero_dataset(dir, 100, 100, 10).string();
  cfg.data_dir = dir.string();
  std::ostringstream err;
  REQUIRE(cmd_eval(cfg, err) == kExitOk);
  const auto reports = load_manifest((dir / "out" / "manifest.json").string()).reports();
  REQUIRE(reports.size() == 1);
  // Var(U^2) = 1/5 - 1/9 over 10^5 samples.
  const double se = std::sqrt((1.0 / 5 - 1.0 / 9) / 1e5);
  CHECK(std::abs(reports[0].amse - 1.0 / 3) <= 3 * se);
  CHECK(reports[0].n_steps == 10000);
}

TEST_CASE("identical runs write byte-identical csv") {
  const auto a = oracle::temp_dir("det_a"), b = oracle::temp_dir("det_b"), c = oracle::temp_dir("det_c");
  std::ostringstream err;
  auto cfg = stdio_config(a, "--policy text");
  cfg.seed = 1234;
  REQUIRE(cmd_eval(cfg, err) == kExitOk);
  cfg.out_dir = b.string();
  REQUIRE(cmd_eval(cfg, err) == kExitOk);
  cfg.out_dir = c.string();
  cfg.workers = 4;
  REQUIRE(cmd_eval(cfg, err) == kExitOk);
  CHECK(csv_of(a) == csv_of(b));
  CHECK(csv_of(a) == csv_of(c));
  const auto m = load_manifest((a / "manifest.json").string());
  for (const auto& r : m.reports()) CHECK(r.fallback_rate == 1.0);

  cfg.seed = 1235;
  cfg.out_dir = (a / "other").string();
  REQUIRE(cmd_eval(cfg, err) == kExitOk);
  CHECK(csv_of(a / "other") != csv_of(a));
}

TEST_CASE("eval splits ignore file order") {
  const auto dir = oracle::temp_dir("order");
  const auto& src = fs::path(kFixtures) / "jaco_play.jsonl";
  std::vector<std::string> lines;
  {
    std::ifstream in(src);
    for (std::string l; std::getline(in, l);) lines.push_back(l);
  }
  std::reverse(lines.begin(), lines.end());
  {
    std::ofstream out(dir / "jaco_play.jsonl");
    for (const auto& l : lines) out << l << "\n";
  }
  auto cfg = verify_config(dir / "out_a");
  cfg.datasets = {"jaco_play"};
  auto reordered = cfg;
  reordered.data_dir = dir.string();
  reordered.out_dir = (dir / "out_b").string();
  const auto a = run_eval(cfg, default_transport_factory(cfg));
  const auto b = run_eval(reordered, default_transport_factory(reordered));
  REQUIRE(a.datasets.size() == 1);
  CHECK(a.datasets[0].eval_episode_ids == b.datasets[0].eval_episode_ids);
  CHECK_FALSE(a.datasets[0].eval_episode_ids.empty());
}

TEST_CASE("one failing dataset leaves the others untouched") {
  const auto dir = oracle::temp_dir("isolation");
  fs::copy(kFixtures, dir / "data");
  const auto clean_out = dir / "clean", broken_out = dir / "broken";

  auto cfg = stdio_config(clean_out, "--policy random --seed 3");
  cfg.data_dir = (dir / "data").string();
  cfg.workers = 3;
  std::ostringstream err;
  REQUIRE(cmd_eval(cfg, err) == kExitOk);

  // Corrupt one byte inside a TFRecord payload.
  const auto victim = dir / "data" / "viola.tfrecord";
  std::string bytes = read_file(victim.string());
  bytes[40] = static_cast<char>(bytes[40] ^ 0x5a);
  write_file(victim.string(), bytes);

  cfg.out_dir = broken_out.string();
  CHECK(cmd_eval(cfg, err) == kExitPartialFailure);
  const auto clean = load_manifest((clean_out / "manifest.json").string());
  const auto broken = load_manifest((broken_out / "manifest.json").string());
  REQUIRE(clean.datasets.size() == broken.datasets.size());
  CHECK(broken.failures() == 1);
  for (std::size_t i = 0; i < clean.datasets.size(); ++i) {
    const auto& b = broken.datasets[i];
    if (b.dataset == "viola") {
      CHECK_FALSE(b.ok);
      CHECK(b.error_type == "ChecksumMismatch");
      continue;
    }
    REQUIRE(b.ok);
    CHECK(b.report == clean.datasets[i].report);
  }
  CHECK(clean.input_hash != broken.input_hash);
}

TEST_CASE("unreachable adapter fails every dataset with a handshake error") {
  const auto out = oracle::temp_dir("unreachable");
  auto cfg = verify_config(out);
  cfg.adapter.command = "exit 0";
  cfg.datasets = {"jaco_play", "viola"};
  std::ostringstream err;
  CHECK(cmd_eval(cfg, err) == kExitPartialFailure);
  const auto m = load_manifest((out / "manifest.json").string());
  REQUIRE(m.datasets.size() == 2);
  for (const auto& d : m.datasets) CHECK(d.error_type == "HandshakeFailure");
}

TEST_CASE("input hash tracks config, registry and data") {
  const auto dir = oracle::temp_dir("hash");
  fs::copy_file(fs::path(kFixtures) / "jaco_play.jsonl", dir / "jaco_play.jsonl");
  fs::copy_file(kRegistry, dir / "registry.json");
  auto cfg = verify_config(dir / "out");
  cfg.registry_path = (dir / "registry.json").string();
  cfg.data_dir = dir.string();
  const std::vector<std::string> data = {(dir / "jaco_play.jsonl").string()};
  const auto base = input_hash(cfg, data);
  CHECK(input_hash(cfg, data) == base);

  auto seeded = cfg;
  seeded.seed = 9;
  CHECK(input_hash(seeded, data) != base);

  std::string reg = read_file(cfg.registry_path);
  write_file(cfg.registry_path, reg + " ");
  CHECK(input_hash(cfg, data) != base);
  write_file(cfg.registry_path, reg);
  CHECK(input_hash(cfg, data) == base);

  std::string bytes = read_file(data[0]);
  bytes[bytes.size() / 2] = bytes[bytes.size() / 2] == '1' ? '2' : '1';
  write_file(data[0], bytes);
  CHECK(input_hash(cfg, data) != base);
}

TEST_CASE("manifest round trips") {
  const auto out = oracle::temp_dir("manifest");
  auto cfg = verify_config(out);
  cfg.datasets = {"viola", "toto"};
  const auto m = run_eval(cfg, default_transport_factory(cfg));
  const auto back = manifest_from_json(json::parse(to_json(m).dump()));
  CHECK(to_json(back) == to_json(m));
  CHECK(back.reports() == m.reports());
  CHECK(back.input_hash.size() == 16);
}

TEST_CASE("report command renders csv, json and markdown") {
  const auto out = oracle::temp_dir("report");
  auto cfg = verify_config(out);
  cfg.datasets = {"jaco_play", "viola"};
  std::ostringstream err;
  REQUIRE(cmd_eval(cfg, err) == kExitOk);
  const auto path = (out / "manifest.json").string();

  std::ostringstream md;
  REQUIRE(cmd_report({path}, "md", md, err) == kExitOk);
  const auto text = md.str();
  CHECK(text.find("| Jaco Play | 0.000 | ") != std::string::npos);
  CHECK(text.find("| VIOLA | 100.000% |") != std::string::npos);

  std::ostringstream csv;
  REQUIRE(cmd_report({path}, "csv", csv, err) == kExitOk);
  const auto rows = metrics::parse_csv(csv.str());
  const auto reports = load_manifest(path).reports();
  REQUIRE(rows.size() == 2);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].dataset == reports[i].dataset);
    CHECK(rows[i].amse == reports[i].amse);
    CHECK(rows[i].namse == reports[i].namse);
    CHECK(rows[i].completion_pct == reports[i].completion_rate * 100);
    CHECK(rows[i].n == reports[i].n_trajectories);
  }

  std::ostringstream js;
  REQUIRE(cmd_report({path}, "json", js, err) == kExitOk);
  CHECK(json::parse(js.str()).size() == 2);

  std::ostringstream bad;
  CHECK(cmd_report({path}, "xml", bad, err) == kExitConfigError);
}

TEST_CASE("empty manifest gives header-only tables") {
  const auto dir = oracle::temp_dir("empty_manifest");
  RunManifest m;
  m.harness_version = "0";
  write_file((dir / "manifest.json").string(), to_json(m).dump());
  std::ostringstream md, csv, err;
  REQUIRE(cmd_report({(dir / "manifest.json").string()}, "md", md, err) == kExitOk);
  REQUIRE(cmd_report({(dir / "manifest.json").string()}, "csv", csv, err) == kExitOk);
  CHECK(csv.str() == std::string(metrics::kCsvHeader) + "\n");
  CHECK(md.str().find("| Dataset Name |") != std::string::npos);
  std::size_t rows = 0;
  std::istringstream lines(md.str());
  for (std::string l; std::getline(lines, l);) rows += l.rfind("| ", 0) == 0;
  CHECK(rows == 2);
}

TEST_CASE("missing manifest") {
  CHECK_THROWS_AS(load_manifest("/nonexistent/manifest.json"), MissingManifest);
  std::ostringstream out, err;
  CHECK(cmd_report({"/nonexistent/manifest.json"}, "csv", out, err) != kExitOk);
  CHECK(err.str().find("manifest") != std::string::npos);
}

TEST_CASE("stats command is idempotent and matches computed stats") {
  const auto dir = oracle::temp_dir("stats");
  const auto data = (fs::path(kFixtures) / "jaco_play.jsonl").string();
  const auto a = (dir / "a.json").string(), b = (dir / "b.json").string();
  std::ostringstream err;
  REQUIRE(cmd_stats("jaco_play", data, kRegistry, a, err) == kExitOk);
  REQUIRE(cmd_stats("Jaco Play", data, kRegistry, b, err) == kExitOk);
  CHECK(read_file(a) == read_file(b));

  const auto reg = registry::load_registry(kRegistry);
  const auto& d = reg.get("jaco_play");
  const auto eps = load_dataset_episodes(data, d);
  const auto expected = action::compute_action_stats(eps, d.action_space);
  CHECK(stats_from_json(json::parse(read_file(a))["stats"]) == expected);
}

TEST_CASE("stats of an empty dataset fails") {
  const auto dir = oracle::temp_dir("stats_empty");
  write_file((dir / "jaco_play.jsonl").string(), "");
  const auto reg = registry::load_registry(kRegistry);
  const auto eps = load_dataset_episodes((dir / "jaco_play.jsonl").string(), reg.get("jaco_play"));
  CHECK(eps.empty());
  CHECK_THROWS_AS(action::compute_action_stats(eps, reg.get("jaco_play").action_space), EmptyInput);
  std::ostringstream err;
  CHECK(cmd_stats("jaco_play", (dir / "jaco_play.jsonl").string(), kRegistry,
                  (dir / "out.json").string(), err) != kExitOk);
  CHECK_FALSE(fs::exists(dir / "out.json"));
  CHECK(cmd_stats("no_such_dataset", (dir / "jaco_play.jsonl").string(), kRegistry,
                  (dir / "out.json").string(), err) == kExitConfigError);
}

TEST_CASE("validate command") {
  std::ostringstream out, err;
  CHECK(cmd_validate(kRegistry, out, err) == kExitOk);
  CHECK(out.str().empty());

  const auto dir = oracle::temp_dir("validate");
  auto doc = json::parse(read_file(kRegistry));
  doc["datasets"][3]["action_space"]["signature"] = "7D (3 ang, 3 pos)";
  doc["datasets"][5]["key_mapping"].erase("action_keys");
  write_file((dir / "bad.json").string(), doc.dump());
  std::ostringstream bad_out;
  CHECK(cmd_validate((dir / "bad.json").string(), bad_out, err) == kExitConfigError);
  CHECK(bad_out.str().find("viola:") != std::string::npos);
  CHECK(bad_out.str().find("toto:") != std::string::npos);

  std::ostringstream missing;
  CHECK(cmd_validate((dir / "none.json").string(), missing, err) == kExitConfigError);
}

TEST_CASE("config errors exit with code 2") {
  const auto out = oracle::temp_dir("config");
  std::ostringstream err;
  auto both = verify_config(out);
  both.adapter.url = "http://127.0.0.1:9/x";
  CHECK(cmd_eval(both, err) == kExitConfigError);
  auto fraction = verify_config(out);
  fraction.split_fraction = 1.5;
  CHECK(cmd_eval(fraction, err) == kExitConfigError);
  auto unknown = verify_config(out);
  unknown.datasets = {"not_a_dataset"};
  CHECK(cmd_eval(unknown, err) == kExitConfigError);
  auto no_registry = verify_config(out);
  no_registry.registry_path = (out / "missing.json").string();
  CHECK(cmd_eval(no_registry, err) == kExitConfigError);

  CHECK_THROWS_AS(run_config_from_json(json{{"registry", "r"}, {"bogus", 1}}), ConfigError);
  CHECK_THROWS_AS(run_config_from_json(json{{"seed", "x"}}), ConfigError);
  CHECK_THROWS_AS(load_run_config((out / "nope.json").string()), ConfigError);
}

TEST_CASE("config file resolves paths relative to itself") {
  const auto dir = oracle::temp_dir("config_file");
  write_file((dir / "run.json").string(),
             json{{"registry", "reg.json"}, {"data_dir", "data"}, {"adapter_cmd", "internal:echo"},
                  {"mode", "verify"}, {"out", "out"}, {"seed", 5}, {"workers", 2},
                  {"namse_mode", "predictions_only"}}
                 .dump());
  const auto c = load_run_config((dir / "run.json").string());
  CHECK(fs::path(c.registry_path) == dir / "reg.json");
  CHECK(fs::path(c.data_dir) == dir / "data");
  CHECK(c.seed == 5);
  CHECK(c.workers == 2);
  CHECK(c.mode == adapter::RunMode::kVerify);
  CHECK(c.namse_mode == metrics::NamseMode::kPredictionsOnly);
  CHECK(run_config_from_json(to_json(c)).seed == 5);
}

TEST_CASE("curation drops duplicates before evaluation") {
  const auto dir = oracle::temp_dir("curation");
  auto doc = json::parse(read_file(kRegistry));
  auto copy = doc["datasets"][0];
  copy["registered_name"] = "jaco_play_small";
  copy["name"] = "Jaco Play Small";
  copy["episode_count"] = 10;
  doc["datasets"].push_back(copy);
  write_file((dir / "registry.json").string(), doc.dump());
  auto cfg = verify_config(dir / "out");
  cfg.registry_path = (dir / "registry.json").string();
  const auto reg = registry::load_registry(cfg.registry_path);
  std::vector<std::pair<std::string, std::string>> dropped;
  const auto selected = select_datasets(reg, cfg, &dropped);
  CHECK(selected.size() == 20);
  REQUIRE(dropped.size() == 1);
  CHECK(dropped[0].first == "jaco_play_small");
  CHECK(dropped[0].second == "duplicate-of:jaco_play");

  cfg.curate = false;
  dropped.clear();
  CHECK(select_datasets(reg, cfg, &dropped).size() == 21);
}

}  // TEST_SUITE
