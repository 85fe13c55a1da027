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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "trajbench/action/stats.hpp"
#include "trajbench/action/transforms.hpp"
#include "trajbench/adapter/coerce.hpp"
#include "trajbench/adapter/transport.hpp"
#include "trajbench/error.hpp"
#include "trajbench/ingest/assemble.hpp"
#include "trajbench/ingest/jsonl.hpp"
#include "trajbench/ingest/tfrecord.hpp"
#include "trajbench/metrics/metrics.hpp"
#include "trajbench/registry/curation.hpp"
#include "trajbench/registry/registry.hpp"
#include "trajbench/run/commands.hpp"
#include "trajbench/run/eval.hpp"
#include "trajbench/util.hpp"

using namespace trajbench;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using Vec = std::vector<double>;

namespace {

const std::string kSource = TRAJBENCH_SOURCE_DIR;
const std::string kRegistry = kSource + "/data/registry.json";
const std::string kFixtures = kSource + "/data/fixtures";

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome tfrecord_integrity() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937_64 rng(20260101);
  std::size_t records = 0;
  for (int fixture = 0; fixture < 1000; ++fixture) {
    std::vector<oracle::Bytes> payloads(1 + rng() % 4);
    for (auto& p : payloads) {
      const std::size_t len = rng() % 4 == 0 ? rng() % 4 : rng() % 10001;
      p.resize(len);
      for (auto& b : p) b = static_cast<std::uint8_t>(rng());
    }
    const auto framed = oracle::frame_records(payloads);
    std::istringstream in(std::string(framed.begin(), framed.end()));
    const auto parsed = ingest::parse_tfrecord_stream(in);
    bool same = parsed.size() == payloads.size();
    for (std::size_t i = 0; same && i < parsed.size(); ++i) same = parsed[i].payload == payloads[i];
    std::ostringstream out;
    ingest::TfRecordWriter w(out);
    for (const auto& p : payloads) w.write(p);
    same = same && out.str() == std::string(framed.begin(), framed.end());
    o.require(same, "round trip " + std::to_string(fixture) + " lost data");
    records += payloads.size();
  }

  oracle::Bytes big(1000);
  for (std::size_t i = 0; i < big.size(); ++i) big[i] = static_cast<std::uint8_t>(i * 7 + 3);
  const auto clean = oracle::frame_records({{}, {0x2a}, big});
  std::size_t flips = 0, detected = 0;
  for (std::size_t byte = 0; byte < clean.size(); ++byte)
    for (int bit = 0; bit < 8; ++bit) {
      auto bad = clean;
      bad[byte] ^= static_cast<std::uint8_t>(1u << bit);
      ++flips;
      std::istringstream in(std::string(bad.begin(), bad.end()));
      try {
        ingest::parse_tfrecord_stream(in);
      } catch (const ChecksumMismatch&) {
        ++detected;
      } catch (const TruncatedRecord&) {
        ++detected;
      }
    }
  o.require(detected == flips, "undetected bit flips");
  const double secs = seconds_since(start);
  o.require(secs < 30.0, "runtime over 30 s");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(records) +
              " records in 1000 fixtures round-tripped, " + std::to_string(detected) + "/" +
              std::to_string(flips) + " bit flips detected, " + fmt("%.2f s", secs);
  return o;
}

Outcome formula_exactness() {
  Outcome o;
  constexpr int kGrid = 10000;
  double worst = 0.0;
  for (int i = 0; i <= kGrid; ++i) {
    const double x = static_cast<double>(i) / kGrid;
    o.require(action::gripper_binary(x) == (x >= 0.5 ? 1 : 0), "gripper_binary at " + std::to_string(x));
    const int t = x < 0.05 ? -1 : (x > 0.95 ? 1 : 0);
    o.require(action::gripper_ternary(x) == t, "gripper_ternary at " + std::to_string(x));
  }
  o.require(action::gripper_binary(0.5) == 1 && action::gripper_binary(std::nextafter(0.5, 0.0)) == 0,
            "binary threshold 0.5");
  o.require(action::gripper_ternary(0.05) == 0 &&
                action::gripper_ternary(std::nextafter(0.05, 0.0)) == -1 &&
                action::gripper_ternary(0.95) == 0 &&
                action::gripper_ternary(std::nextafter(0.95, 1.0)) == 1,
            "ternary thresholds 0.05/0.95");

  const std::pair<double, double> ranges[] = {{0.0, 1.0}, {-0.37, 0.81}, {-3.5, 12.25}, {0.02, 0.08}};
  for (auto [low, high] : ranges) {
    o.require(action::normalize_continuous(low, low, high) == -1.0, "normalize endpoint low");
    o.require(action::normalize_continuous(high, low, high) == 1.0, "normalize endpoint high");
    for (int i = 1; i < kGrid; ++i) {
      const long double x = low + (static_cast<long double>(high) - low) * i / kGrid;
      const double xd = static_cast<double>(x);
      const long double ref = 2.0L * (xd - static_cast<long double>(low)) / (high - static_cast<long double>(low)) - 1.0L;
      worst = std::max(worst, static_cast<double>(std::fabs(action::normalize_continuous(xd, low, high) - ref)));
    }
  }
  const std::pair<double, double> quantiles[] = {{-1.0, 1.0}, {2.0, 4.0}, {-0.8, 1.3}, {0.001, 0.004}};
  for (auto [q01, q99] : quantiles) {
    o.require(action::unnormalize_percentile(-1.0, q01, q99) == q01, "unnormalize endpoint q01");
    o.require(action::unnormalize_percentile(1.0, q01, q99) == q99, "unnormalize endpoint q99");
    for (int i = 1; i < kGrid; ++i) {
      const double n = -1.0 + 2.0 * i / kGrid;
      const long double ref = 0.5L * (n + 1.0L) * (static_cast<long double>(q99) - q01) + q01;
      worst = std::max(worst, static_cast<double>(std::fabs(action::unnormalize_percentile(n, q01, q99) - ref)));
    }
  }
  o.require(worst <= 1e-12, "interior deviation " + fmt("%.3g", worst));

  // Percentile endpoints: nearest rank over 1..100 gives q01 = 1, q99 = 99.
  action::StatsAccumulator acc(1);
  for (int v = 100; v >= 1; --v) {
    const double s = v;
    acc.add(std::span(&s, 1));
  }
  const auto st = acc.finish();
  o.require(st.q01[0] == 1.0 && st.q99[0] == 99.0, "nearest-rank q01/q99");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("grid 10^4 points, endpoints exact, max interior deviation ") +
              fmt("%.3g", worst);
  return o;
}

std::vector<metrics::TrajectoryPairs> random_instance(std::mt19937_64& rng, std::size_t dims,
                                                      std::size_t n_traj, std::size_t max_steps) {
  std::uniform_real_distribution<double> u(-5, 5);
  std::vector<metrics::TrajectoryPairs> out;
  for (std::size_t t = 0; t < n_traj; ++t) {
    metrics::TrajectoryPairs tp{"e" + std::to_string(t), {}};
    for (std::size_t s = 0, n = 1 + rng() % max_steps; s < n; ++s) {
      metrics::StepPair p;
      for (std::size_t d = 0; d < dims; ++d) {
        p.predicted.push_back(u(rng));
        p.ground_truth.push_back(u(rng));
      }
      tp.steps.push_back(p);
    }
    out.push_back(tp);
  }
  return out;
}

Outcome metric_oracles() {
  Outcome o;
  std::mt19937_64 rng(31337);
  double worst = 0.0;
  for (int inst = 0; inst < 200; ++inst) {
    const auto ts = random_instance(rng, 1 + rng() % 32, 1 + rng() % 20, 50);
    std::vector<std::vector<std::pair<Vec, Vec>>> raw;
    for (const auto& t : ts) {
      raw.emplace_back();
      for (const auto& s : t.steps) {
        raw.back().emplace_back(s.predicted, s.ground_truth);
        worst = std::max(worst, std::abs(metrics::step_mse(s) - oracle::step_mse(s.predicted, s.ground_truth)));
      }
    }
    worst = std::max(worst, std::abs(metrics::amse(metrics::score_trajectories(ts)) - oracle::amse(raw)));
  }
  o.require(worst <= 1e-12, "deviation " + fmt("%.3g", worst));
  const Vec y = {0.25, -1.5, 3.0};
  o.require(metrics::step_mse(y, y) == 0.0, "identity step_mse not exactly 0");
  std::vector<metrics::TrajectoryPairs> same = {{"a", {{y, y, false}, {y, y, false}}}};
  o.require(metrics::amse(metrics::score_trajectories(same)) == 0.0, "identity AMSE not exactly 0");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("200 instances, max deviation ") + fmt("%.3g", worst) +
              ", identity exactly 0";
  return o;
}

Outcome namse_invariance() {
  Outcome o;
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> scale(0.01, 100.0), shift(-100.0, 100.0);
  double worst = 0.0;
  for (int inst = 0; inst < 100; ++inst) {
    const std::size_t dims = 1 + rng() % 8;
    auto ts = random_instance(rng, dims, 2 + rng() % 10, 20);
    Vec a(dims), b(dims);
    for (std::size_t d = 0; d < dims; ++d) {
      a[d] = scale(rng);
      b[d] = shift(rng);
    }
    auto mapped = ts;
    for (auto& t : mapped)
      for (auto& s : t.steps)
        for (std::size_t d = 0; d < dims; ++d) {
          s.predicted[d] = a[d] * s.predicted[d] + b[d];
          s.ground_truth[d] = a[d] * s.ground_truth[d] + b[d];
        }
    const auto before = metrics::namse(ts), after = metrics::namse(mapped);
    if (!before.value || !after.value) {
      o.require(false, "NAMSE undefined on instance " + std::to_string(inst));
      continue;
    }
    worst = std::max(worst, std::abs(*before.value - *after.value));
  }
  o.require(worst <= 1e-12, "affine deviation " + fmt("%.3g", worst));

  // Predictions spanning exactly [0, 1] in every dimension.
  auto unit = random_instance(rng, 4, 6, 10);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (auto& t : unit)
    for (auto& s : t.steps)
      for (std::size_t d = 0; d < 4; ++d) {
        s.predicted[d] = u01(rng);
        s.ground_truth[d] = u01(rng);
      }
  for (std::size_t d = 0; d < 4; ++d) {
    unit[0].steps[0].predicted[d] = 0.0;
    unit[1].steps[0].predicted[d] = 1.0;
  }
  const auto n = metrics::namse(unit);
  const double a = metrics::amse(metrics::score_trajectories(unit));
  o.require(n.value && *n.value == a, "identity transform NAMSE != AMSE");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("100 datasets, max change ") + fmt("%.3g", worst) +
              ", unit-span NAMSE == AMSE";
  return o;
}

Outcome analytic_expectation() {
  Outcome o;
  adapter::Xoshiro256StarStar rng(99);
  std::string detail;
  for (double y : {0.0, 0.2, 0.5, 0.8, 1.0}) {
    // 1000 trajectories x 100 steps, one dimension: 10^5 samples.
    std::vector<metrics::TrajectoryPairs> ts;
    double sum = 0.0, sum_sq = 0.0;
    for (int t = 0; t < 1000; ++t) {
      metrics::TrajectoryPairs tp{"e", {}};
      for (int s = 0; s < 100; ++s) {
        auto fb = adapter::fallback_outcome(1, adapter::FallbackReason::kMixedText, rng);
        const double e = (fb.action[0] - y) * (fb.action[0] - y);
        sum += e;
        sum_sq += e * e;
        tp.steps.push_back({fb.action, {y}, true});
      }
      ts.push_back(tp);
    }
    const double n = 1e5;
    const double se = std::sqrt((sum_sq / n - (sum / n) * (sum / n)) / n);
    const double expected = 1.0 / 3 - y + y * y;
    const double got = metrics::amse(metrics::score_trajectories(ts));
    o.require(std::abs(got - expected) <= 3 * se,
              "y=" + fmt("%.1f", y) + " AMSE " + fmt("%.5f", got) + " vs " + fmt("%.5f", expected));
    detail += (detail.empty() ? "" : ", ") + std::string("y=") + fmt("%.1f", y) + ": " +
              fmt("%.2f SE", std::abs(got - expected) / se);
  }
  o.detail += (o.detail.empty() ? "" : "; ") + detail;
  return o;
}

run::RunConfig echo_config(const fs::path& out) {
  run::RunConfig c;
  c.registry_path = kRegistry;
  c.data_dir = kFixtures;
  c.adapter.command = adapter::kInternalEchoCommand;
  c.mode = adapter::RunMode::kVerify;
  c.out_dir = out.string();
  return c;
}

Outcome end_to_end_replay() {
  Outcome o;
  const auto out = oracle::temp_dir("acceptance-replay");
  const auto start = Clock::now();
  std::ostringstream err;
  const int code = run::cmd_eval(echo_config(out), err);
  const double secs = seconds_since(start);
  o.require(code == run::kExitOk, "eval exit code " + std::to_string(code));
  std::size_t n = 0;
  if (code == run::kExitOk) {
    const auto m = run::load_manifest((out / "manifest.json").string());
    for (const auto& r : m.reports()) {
      ++n;
      o.require(r.amse == 0.0, r.dataset + " AMSE " + format_double(r.amse));
      o.require(r.completion_rate == 1.0, r.dataset + " completion " + format_double(r.completion_rate));
    }
    o.require(n == 20 && m.failures() == 0, "not every bundled dataset evaluated");
  }
  o.require(secs < 60.0, "runtime over 60 s");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(n) +
              " datasets AMSE 0, completion 100%, " + fmt("%.2f s", secs);
  fs::remove_all(out);
  return o;
}

// Rewrites every fixture with its episodes in reverse order.
void write_reversed_fixtures(const fs::path& dir) {
  fs::create_directories(dir);
  const auto reg = registry::load_registry(kRegistry);
  for (const auto& d : reg.datasets()) {
    const auto path = run::dataset_data_path(kFixtures, d);
    auto eps = run::load_dataset_episodes(path, d);
    std::reverse(eps.begin(), eps.end());
    const auto target = dir / fs::path(path).filename();
    std::ofstream out(target, std::ios::binary);
    if (target.extension() == ".jsonl")
      for (const auto& e : eps) out << ingest::episode_to_jsonl(e) << "\n";
    else
      ingest::write_tfrecord_episodes(out, eps, d.key_mapping);
  }
}

std::map<std::string, std::vector<std::string>> splits_of(const run::RunManifest& m) {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& d : m.datasets) out[d.dataset] = d.eval_episode_ids;
  return out;
}

Outcome determinism() {
  Outcome o;
  const auto dir = oracle::temp_dir("acceptance-determinism");
  auto cfg = echo_config(dir / "a");
  cfg.adapter.command = std::string(TRAJBENCH_TEST_ADAPTER) + " --policy random --seed 17";
  cfg.mode = adapter::RunMode::kEval;
  cfg.seed = 2026;
  cfg.workers = 4;
  std::ostringstream err;
  const int first = run::cmd_eval(cfg, err);
  cfg.out_dir = (dir / "b").string();
  const int second = run::cmd_eval(cfg, err);
  o.require(first == run::kExitOk && second == run::kExitOk, "eval failed");
  const auto csv_a = read_file((dir / "a" / "report.csv").string());
  const auto csv_b = read_file((dir / "b" / "report.csv").string());
  o.require(csv_a == csv_b, "CSV reports differ");

  write_reversed_fixtures(dir / "reversed");
  cfg.data_dir = (dir / "reversed").string();
  cfg.out_dir = (dir / "c").string();
  o.require(run::cmd_eval(cfg, err) == run::kExitOk, "eval on permuted inputs failed");
  const auto ma = run::load_manifest((dir / "a" / "manifest.json").string());
  const auto mb = run::load_manifest((dir / "b" / "manifest.json").string());
  const auto mc = run::load_manifest((dir / "c" / "manifest.json").string());
  o.require(splits_of(ma) == splits_of(mb), "eval splits differ across runs");
  for (const auto& [name, ids] : splits_of(ma))
    o.require(splits_of(mc)[name] == ids, "eval split of " + name + " differs under input permutation");
  std::size_t lines = std::count(csv_a.begin(), csv_a.end(), '\n');
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("CSV byte-identical (") +
              std::to_string(lines) + " lines), splits identical across runs and reversed inputs";
  fs::remove_all(dir);
  return o;
}

Outcome curation() {
  Outcome o;
  const auto reg = registry::load_registry(kRegistry);
  std::vector<registry::DatasetDescriptor> synthetic = reg.datasets();
  std::map<std::string, std::string> expected_winner;  // dropped -> kept
  std::mt19937_64 rng(5);
  for (std::size_t i = 0; i < reg.datasets().size(); i += 3) {
    const auto& orig = reg.datasets()[i];
    for (int k = 0; k < 2; ++k) {
      auto dup = orig;
      dup.registered_name = orig.registered_name + "_dup" + std::to_string(k);
      dup.name = orig.name + " dup " + std::to_string(k);
      // First copy smaller, second copy larger than the original.
      dup.episode_count = k == 0 ? orig.episode_count / 2 + 1 : orig.episode_count * 3;
      synthetic.push_back(dup);
    }
    const auto big = orig.registered_name + "_dup1";
    expected_winner[orig.registered_name] = big;
    expected_winner[orig.registered_name + "_dup0"] = big;
  }
  std::shuffle(synthetic.begin(), synthetic.end(), rng);
  const auto dec = registry::dedupe_datasets(synthetic);
  o.require(dec.dropped.size() == expected_winner.size(),
            "dropped " + std::to_string(dec.dropped.size()) + ", expected " +
                std::to_string(expected_winner.size()));
  for (const auto& [name, reason] : dec.dropped) {
    auto it = expected_winner.find(name);
    o.require(it != expected_winner.end() && reason == "duplicate-of:" + it->second,
              "unexpected drop " + name + " (" + reason + ")");
  }
  o.require(dec.kept.size() + dec.dropped.size() == synthetic.size(), "kept/dropped do not partition");

  auto with_excluded = reg.datasets();
  const std::pair<const char*, const char*> excluded[] = {
      {"Austin BUDS", "austin_buds_dataset_converted_externally_to_rlds"},
      {"Austin Sailor", "austin_sailor_dataset_converted_externally_to_rlds"},
      {"Stanford Kuka Multimodal", "stanford_kuka_multimodal_dataset_converted_externally_to_rlds"}};
  int cams = 7;
  for (auto [name, reg_name] : excluded) {
    auto d = reg.datasets().front();
    d.name = name;
    d.registered_name = reg_name;
    d.rgb_cameras = cams++;
    with_excluded.push_back(d);
  }
  const auto ex = registry::exclude_datasets(with_excluded, registry::default_exclusions());
  std::vector<std::string> dropped;
  for (const auto& [name, reason] : ex.dropped) dropped.push_back(name);
  std::sort(dropped.begin(), dropped.end());
  std::vector<std::string> want;
  for (auto [name, reg_name] : excluded) want.push_back(reg_name);
  std::sort(want.begin(), want.end());
  o.require(dropped == want, "exclusion dropped the wrong datasets");
  o.require(ex.kept.size() == reg.datasets().size(), "exclusion dropped extra datasets");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(synthetic.size()) + " descriptors, " +
              std::to_string(dec.dropped.size()) + " duplicates dropped for the larger entry; exclusion dropped " +
              std::to_string(dropped.size());
  return o;
}

Outcome coercion_totality() {
  Outcome o;
  using adapter::AdapterResponse;
  using adapter::FallbackReason;
  using nlohmann::json;
  std::mt19937_64 gen(777);
  adapter::Xoshiro256StarStar rng(778);
  const std::vector<std::string> prose = {"move left", "open the gripper", "I cannot see the robot",
                                          "action:", "the answer is", "unknown", "N/A"};
  auto number = [&] { return static_cast<double>(static_cast<long>(gen() % 2001) - 1000) / 1000.0; };
  std::size_t labeled = 0, correct = 0;
  std::map<FallbackReason, std::size_t> per_reason;
  for (int i = 0; i < 10000; ++i) {
    const std::size_t dim = 1 + gen() % 16;
    AdapterResponse r;
    FallbackReason label;
    switch (i % 7) {
      case 0: {  // wrong length, numeric
        std::size_t len = gen() % (dim + 8);
        if (len == dim) ++len;
        json a = json::array();
        for (std::size_t k = 0; k < len; ++k) a.push_back(number());
        r = {"id", adapter::ActionPayload{a}};
        label = FallbackReason::kWrongLength;
        break;
      }
      case 1: {  // right length, one string or null element
        json a = json::array();
        for (std::size_t k = 0; k < dim; ++k) a.push_back(number());
        a[gen() % dim] = gen() % 2 ? json("0.5") : json(nullptr);
        r = {"id", adapter::ActionPayload{a}};
        label = FallbackReason::kNonNumeric;
        break;
      }
      case 2: {  // right length, one nested element
        json a = json::array();
        for (std::size_t k = 0; k < dim; ++k) a.push_back(number());
        a[gen() % dim] = gen() % 2 ? json::array({number(), number()}) : json{{"x", number()}};
        r = {"id", adapter::ActionPayload{a}};
        label = FallbackReason::kNonScalarElement;
        break;
      }
      case 3: {  // prose
        r = AdapterResponse::text("id", prose[gen() % prose.size()]);
        label = FallbackReason::kMixedText;
        break;
      }
      case 4: {  // numbers embedded in prose
        std::string t = prose[gen() % prose.size()] + " [";
        for (std::size_t k = 0; k < dim; ++k) t += (k ? ", " : "") + format_double(number());
        t += "]";
        r = AdapterResponse::text("id", gen() % 2 ? t : t + " please");
        label = FallbackReason::kMixedText;
        break;
      }
      case 5: {  // numeric text of the wrong length
        std::string t = "[";
        for (std::size_t k = 0; k < dim + 1; ++k) t += (k ? ", " : "") + format_double(number());
        r = AdapterResponse::text("id", t + "]");
        label = FallbackReason::kWrongLength;
        break;
      }
      default: {
        r = AdapterResponse::error("id", "model error");
        label = FallbackReason::kAdapterError;
        break;
      }
    }
    const auto out = adapter::coerce_response(r, dim, rng);
    o.require(out.action.size() == dim, "length " + std::to_string(out.action.size()) + " != " + std::to_string(dim));
    o.require(out.used_fallback && out.reason.has_value(), "malformed response passed through");
    for (double v : out.action) o.require(v >= 0.0 && v < 1.0, "fallback value outside [0,1)");
    ++labeled;
    if (out.reason == label) {
      ++correct;
      ++per_reason[label];
    }
  }
  o.require(correct == labeled, std::to_string(labeled - correct) + " misclassified");
  std::string counts;
  for (const auto& [reason, n] : per_reason)
    counts += (counts.empty() ? "" : ", ") + adapter::to_string(reason) + " " + std::to_string(n);
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(labeled) + " malformed responses, " +
              std::to_string(correct) + " correctly classified (" + counts + ")";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"tfrecord_integrity", tfrecord_integrity},
      {"formula_exactness", formula_exactness},
      {"metric_oracles", metric_oracles},
      {"namse_affine_invariance", namse_invariance},
      {"analytic_expectation", analytic_expectation},
      {"end_to_end_replay", end_to_end_replay},
      {"determinism", determinism},
      {"curation", curation},
      {"coercion_totality", coercion_totality},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
