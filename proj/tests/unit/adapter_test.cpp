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

#include <httplib.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "trajbench/adapter/coerce.hpp"
#include "trajbench/adapter/image_prep.hpp"
#include "trajbench/adapter/prompt.hpp"
#include "trajbench/adapter/protocol.hpp"
#include "trajbench/adapter/request.hpp"
#include "trajbench/adapter/session.hpp"
#include "trajbench/adapter/transport.hpp"
#include "trajbench/error.hpp"

using namespace trajbench;
using namespace trajbench::adapter;
using nlohmann::json;
using namespace std::chrono_literals;

namespace {

std::string adapter_cmd(const std::string& flags) {
  return std::string(TRAJBENCH_TEST_ADAPTER) + " " + flags;
}

action::ActionStats flat_stats(std::size_t dims, double lo, double hi, double mean) {
  action::ActionStats s;
  s.min.assign(dims, lo);
  s.max.assign(dims, hi);
  s.mean.assign(dims, mean);
  s.q01.assign(dims, lo);
  s.q99.assign(dims, hi);
  s.sample_count = 1;
  return s;
}

AdapterRequest make_request(std::size_t i, std::size_t dims = 3) {
  AdapterRequest r;
  r.request_id = "ds/ep/" + std::to_string(i);
  r.dataset = "ds";
  r.step_index = i;
  r.observation_vector = {0.5, 1.5};
  r.observation_states = {{"state", {0.5, 1.5}}};
  r.action_space = action::ActionSpaceSpec::from_signature(
      action::parse_signature(std::to_string(dims) + "D (" + std::to_string(dims) + " pos)"));
  r.action_stats = flat_stats(dims, -1, 1, 0);
  r.verification_ground_truth = std::vector<double>(dims, 0.125 * static_cast<double>(i));
  return r;
}

std::vector<AdapterRequest> make_requests(std::size_t n) {
  std::vector<AdapterRequest> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(make_request(i));
  return out;
}

ingest::Image image(int w, int h, int c, std::uint8_t base) {
  ingest::Image img{w, h, c, Bytes(static_cast<std::size_t>(w * h * c))};
  for (std::size_t i = 0; i < img.data.size(); ++i) img.data[i] = static_cast<std::uint8_t>(base + i);
  return img;
}

AdapterResponse text(std::string t) { return AdapterResponse::text("id", std::move(t)); }
AdapterResponse values(json v) { return {"id", ActionPayload{std::move(v)}}; }

}  // namespace

TEST_SUITE("adapter") {

TEST_CASE("four-channel conversion duplicates channels") {
  ingest::Image rgb{2, 1, 3, {10, 20, 30, 10, 20, 30}};
  auto out = to_four_channel(rgb);
  CHECK(out.channels == 4);
  CHECK(out.width == 2);
  CHECK(out.data == Bytes{10, 20, 30, 10, 10, 20, 30, 10});

  auto rgba = image(3, 2, 4, 7);
  CHECK(to_four_channel(rgba) == rgba);
  ingest::Image two{1, 1, 2, {5, 9}};
  CHECK(to_four_channel(two).data == Bytes{5, 9, 5, 9});
  ingest::Image one{1, 1, 1, {4}};
  CHECK(to_four_channel(one).data == Bytes{4, 4, 4, 4});
  ingest::Image five{1, 1, 5, {1, 2, 3, 4, 5}};
  CHECK_THROWS_AS(to_four_channel(five), UnsupportedChannels);
}

TEST_CASE("four-channel conversion preserves geometry") {
  for (int c = 1; c <= 4; ++c)
    for (int w = 1; w < 5; ++w) {
      auto out = to_four_channel(image(w, 3, c, 1));
      CHECK(out.channels == 4);
      CHECK(out.width == w);
      CHECK(out.height == 3);
      CHECK(out.data.size() == static_cast<std::size_t>(w * 3 * 4));
    }
}

TEST_CASE("image selection by policy") {
  ingest::KeyMapping m;
  m.image_keys = {{"image", "image", 2, 2, 3}, {"wrist_image", "wrist_image", 2, 2, 3}};
  ingest::StepRecord step;
  step.observation["wrist_image"] = image(2, 2, 3, 50);
  step.observation["image"] = image(2, 2, 3, 0);
  auto primary = select_images(step, ImagePolicy::kPrimaryOnly, m);
  REQUIRE(primary.size() == 1);
  CHECK(primary[0].first == "image");
  auto all = select_images(step, ImagePolicy::kAllViews, m);
  REQUIRE(all.size() == 2);
  CHECK(all[0].first == "image");
  CHECK(all[1].first == "wrist_image");

  ingest::KeyMapping none;
  CHECK_THROWS_AS(select_images(step, ImagePolicy::kAllViews, none), NoImageAvailable);
}

TEST_CASE("prompt carries stats and omits an absent task") {
  auto r = make_request(0, 2);
  r.instruction = "pick up the block";
  auto sections = build_prompt_payload(r);
  std::vector<std::string> markers;
  for (const auto& s : sections) markers.push_back(s.marker);
  CHECK(markers == std::vector<std::string>{"## STATE", "## INSTRUCTION", "## ACTION DIMENSIONS",
                                            "## ACTION STATISTICS", "## OUTPUT FORMAT"});
  CHECK(sections[3].body == "0. pos_0: min=-1, max=1, mean=0\n1. pos_1: min=-1, max=1, mean=0\n");
  CHECK(sections[1].body.find("pick up the block") != std::string::npos);
  CHECK(sections[0].body.find("state: [0.5, 1.5]") != std::string::npos);
  CHECK(sections[4].body.find("exactly 2 numbers") != std::string::npos);

  r.task_description = "Tabletop pick and place.";
  auto with_task = build_prompt_payload(r);
  REQUIRE(with_task.size() == 6);
  CHECK(with_task[4].marker == "## TASK");
  CHECK(render_prompt(with_task) == render_prompt(build_prompt_payload(r)));
}

TEST_CASE("coercion examples") {
  Xoshiro256StarStar rng(1);
  auto pass = coerce_response(values(json::array({0.1, 0.2})), 2, rng);
  CHECK_FALSE(pass.used_fallback);
  CHECK(pass.action == std::vector<double>{0.1, 0.2});

  auto prose = coerce_response(text("move left"), 7, rng);
  CHECK(prose.used_fallback);
  CHECK(prose.reason == FallbackReason::kMixedText);
  CHECK(prose.action.size() == 7);
  for (double v : prose.action) CHECK((v >= 0.0 && v < 1.0));

  auto short_vec = coerce_response(values(json::array({1, 2, 3, 4, 5})), 7, rng);
  CHECK(short_vec.reason == FallbackReason::kWrongLength);
  CHECK(short_vec.action.size() == 7);
}

TEST_CASE("coercion labels each defect") {
  Xoshiro256StarStar rng(2);
  struct Case {
    AdapterResponse response;
    std::optional<FallbackReason> reason;
  };
  const std::vector<Case> cases = {
      {text("[0.1, 0.2, 0.3]"), std::nullopt},
      {text("0.1 0.2 0.3"), std::nullopt},
      {text(" 0.1,0.2 , 0.3\n"), std::nullopt},
      {text("1e-3, +2, -0.5"), std::nullopt},
      {text("[0.1, 0.2]"), FallbackReason::kWrongLength},
      {text("open the gripper"), FallbackReason::kMixedText},
      {text("the action is [0.1, 0.2, 0.3]"), FallbackReason::kMixedText},
      {text("[0.1, 0.2, 0.3] done"), FallbackReason::kMixedText},
      {text(""), FallbackReason::kMixedText},
      {text("0.1,,0.2,0.3"), FallbackReason::kMixedText},
      {text("{\"action\": [1, 2, 3]}"), FallbackReason::kMixedText},
      {text("[[0.1], [0.2], [0.3]]"), FallbackReason::kNonScalarElement},
      {text("[0.1, \"x\", 0.3]"), FallbackReason::kNonNumeric},
      {text("nan, 0.2, 0.3"), FallbackReason::kNonNumeric},
      {values(json::array({0.1, "0.2", 0.3})), FallbackReason::kNonNumeric},
      {values(json::array({0.1, nullptr, 0.3})), FallbackReason::kNonNumeric},
      {values(json::array({0.1, true, 0.3})), FallbackReason::kNonNumeric},
      {values(json::array({0.1, json::array({0.2}), 0.3})), FallbackReason::kNonScalarElement},
      {values(json::array({0.1, json::object(), "x"})), FallbackReason::kNonScalarElement},
      {values(json::object({{"a", 1}})), FallbackReason::kNonScalarElement},
      {values("0.1 0.2 0.3"), FallbackReason::kNonNumeric},
      {values(json::array({1, 2})), FallbackReason::kWrongLength},
      {values(json::array()), FallbackReason::kWrongLength},
      {AdapterResponse::error("id", "boom"), FallbackReason::kAdapterError},
  };
  for (const auto& c : cases) {
    auto out = coerce_response(c.response, 3, rng);
    INFO(response_message(c.response).dump());
    CHECK(out.reason == c.reason);
    CHECK(out.used_fallback == c.reason.has_value());
    CHECK(out.action.size() == 3);
  }
}

TEST_CASE("coercion is total on random responses") {
  std::mt19937_64 gen(4);
  Xoshiro256StarStar rng(4);
  const std::string alphabet = "0123456789.,-+e []\"abc\n{}:";
  for (int i = 0; i < 10000; ++i) {
    const std::size_t dim = 1 + gen() % 12;
    AdapterResponse r;
    if (gen() % 2) {
      std::string t(gen() % 40, ' ');
      for (auto& ch : t) ch = alphabet[gen() % alphabet.size()];
      r = text(t);
    } else {
      json arr = json::array();
      for (std::size_t k = 0, n = gen() % 14; k < n; ++k) {
        switch (gen() % 5) {
          case 0: arr.push_back("s"); break;
          case 1: arr.push_back(json::array({1})); break;
          default: arr.push_back(static_cast<double>(gen() % 1000) / 7.0);
        }
      }
      r = values(arr);
    }
    auto out = coerce_response(r, dim, rng);
    REQUIRE(out.action.size() == dim);
    CHECK(out.used_fallback == out.reason.has_value());
    if (out.used_fallback)
      for (double v : out.action) CHECK((v >= 0.0 && v < 1.0));
  }
}

TEST_CASE("generator matches the reference xoshiro256** stream") {
  // splitmix64 from seed 0 then xoshiro256**; first outputs of the reference
  // C implementation.
  std::uint64_t sm = 0;
  std::uint64_t s[4];
  for (auto& w : s) {
    std::uint64_t z = (sm += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    w = z ^ (z >> 31);
  }
  auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
  Xoshiro256StarStar rng(0);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t expected = rotl(s[1] * 5, 7) * 9;
    const std::uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = rotl(s[3], 45);
    REQUIRE(rng() == expected);
  }
  CHECK(Xoshiro256StarStar(0)() == 0x99ec5f36cb75f2b4ULL);
}

TEST_CASE("fallback draws are reproducible and uniform") {
  Xoshiro256StarStar a(42), b(42);
  CHECK(fallback_outcome(5, FallbackReason::kMixedText, a).action ==
        fallback_outcome(5, FallbackReason::kMixedText, b).action);

  Xoshiro256StarStar rng(2024);
  constexpr int kDraws = 100000;
  constexpr std::size_t kDim = 4;
  std::vector<double> sums(kDim, 0.0);
  std::vector<double> first;
  for (int i = 0; i < kDraws / static_cast<int>(kDim); ++i) {
    auto out = fallback_outcome(kDim, FallbackReason::kAdapterError, rng);
    for (std::size_t d = 0; d < kDim; ++d) {
      REQUIRE((out.action[d] >= 0.0 && out.action[d] < 1.0));
      sums[d] += out.action[d];
    }
    first.push_back(out.action[0]);
  }
  for (double s : sums) CHECK(std::abs(s / (kDraws / kDim) - 0.5) <= 0.01);

  Xoshiro256StarStar all(7);
  std::vector<double> xs(kDraws);
  for (auto& x : xs) x = all.uniform01();
  std::sort(xs.begin(), xs.end());
  double ks = 0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    ks = std::max({ks, (i + 1.0) / kDraws - xs[i], xs[i] - static_cast<double>(i) / kDraws});
  CHECK(ks < 1.628 / std::sqrt(static_cast<double>(kDraws)));
}

TEST_CASE("wire messages round trip") {
  auto hello = hello_message(RunMode::kVerify);
  CHECK(hello == json{{"type", "hello"}, {"protocol_version", 1}, {"mode", "verify"}});
  ReadyInfo info{"m", 1024, true};
  auto back = parse_ready(ready_message(info));
  CHECK(back.name == "m");
  CHECK(back.max_image_bytes == 1024);
  CHECK(back.supports_verify);
  CHECK_THROWS_AS(parse_ready(json{{"type", "result"}}), Error);
  CHECK(bye_message() == json{{"type", "bye"}});

  auto r = make_request(3);
  r.images = {{"image", image(2, 2, 3, 0)}, {"wrist_image", image(8, 8, 3, 0)}};
  std::size_t dropped = 0;
  auto msg = predict_message(r, "PROMPT", 100, &dropped);
  CHECK(msg["type"] == "predict");
  CHECK(msg["request_id"] == "ds/ep/3");
  CHECK(msg["expected_dim"] == 3);
  CHECK(msg["prompt"] == "PROMPT");
  CHECK(msg["images"].size() == 1);
  CHECK(dropped == 1);
  CHECK(msg["verification_ground_truth"] == json::array({0.375, 0.375, 0.375}));

  for (const auto& resp : {AdapterResponse::action("a", {0.5, 1}), AdapterResponse::text("b", "x"),
                           AdapterResponse::error("c", "bad")}) {
    auto parsed = parse_response(response_message(resp));
    CHECK(parsed.request_id == resp.request_id);
    CHECK(parsed.payload.index() == resp.payload.index());
  }
  CHECK_THROWS_AS(parse_response(json{{"type", "result"}, {"request_id", "x"}}), Error);
}

TEST_CASE("requests are built from one step only") {
  ingest::EpisodeRecord ep;
  ep.episode_id = "ep7";
  ep.instruction = "wipe the table";
  std::mt19937_64 rng(9);
  for (int s = 0; s < 6; ++s) {
    ingest::StepRecord st;
    st.observation["b_state"] = std::vector<double>{double(rng() % 10), double(rng() % 10)};
    st.observation["a_state"] = std::vector<double>{double(s)};
    st.observation["image"] = image(2, 2, 3, static_cast<std::uint8_t>(rng()));
    st.action["action"] = std::vector<double>{double(rng() % 5), double(rng() % 5), 0, 1};
    ep.steps.push_back(st);
  }
  RequestContext ctx;
  ctx.dataset = "ds";
  ctx.mapping.image_keys = {{"image", "image", 2, 2, 3}};
  ctx.mapping.action_keys = {"action"};
  ctx.action_space = action::ActionSpaceSpec::from_signature(action::parse_signature("4D (4 pos)"));
  ctx.action_stats = flat_stats(4, 0, 5, 2);
  ctx.four_channel_images = true;

  auto first = build_request(ctx, ep, 2, std::nullopt);
  CHECK(first.request_id == "ds/ep7/2");
  CHECK(first.observation_vector ==
        std::vector<double>{2.0, std::get<std::vector<double>>(ep.steps[2].observation["b_state"])[0],
                            std::get<std::vector<double>>(ep.steps[2].observation["b_state"])[1]});
  REQUIRE(first.images.size() == 1);
  CHECK(first.images[0].second.channels == 4);
  CHECK_FALSE(first.verification_ground_truth);

  // Every other step reshuffled: each step's serialized request is unchanged.
  for (int trial = 0; trial < 20; ++trial) {
    for (std::size_t i = 0; i < ep.steps.size(); ++i) {
      auto shuffled = ep;
      std::vector<ingest::StepRecord> others;
      for (std::size_t k = 0; k < ep.steps.size(); ++k)
        if (k != i) others.push_back(ep.steps[k]);
      std::shuffle(others.begin(), others.end(), rng);
      for (std::size_t k = 0, o = 0; k < ep.steps.size(); ++k)
        shuffled.steps[k] = k == i ? ep.steps[i] : others[o++];
      const auto a = build_request(ctx, ep, i, std::nullopt);
      const auto b = build_request(ctx, shuffled, i, std::nullopt);
      const auto pa = render_prompt(build_prompt_payload(a));
      CHECK(predict_message(a, pa).dump() ==
            predict_message(b, render_prompt(build_prompt_payload(b))).dump());
    }
  }

  std::size_t missing = 0;
  auto bare = ep;
  bare.steps[0].observation.erase("image");
  auto r = build_request(ctx, bare, 0, std::vector<double>{1, 2, 3, 4}, &missing);
  CHECK(missing == 1);
  CHECK(r.images.empty());
  CHECK(r.verification_ground_truth == std::vector<double>{1, 2, 3, 4});
}

TEST_CASE("echo endpoint replays ground truth with zero fallbacks") {
  const auto reqs = make_requests(6);
  SessionStats stats;
  ReadyInfo ready;
  auto outcomes = run_adapter_session(std::make_unique<InProcessTransport>(make_echo_handler()),
                                      reqs, {RunMode::kVerify, 1000ms, 0}, &stats, &ready);
  REQUIRE(outcomes.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK_FALSE(outcomes[i].used_fallback);
    CHECK(outcomes[i].action == *reqs[i].verification_ground_truth);
  }
  CHECK(stats.fallbacks == 0);
  CHECK(stats.requests == 6);
  CHECK(ready.name == "internal-echo");
}

TEST_CASE("stdio replay adapter") {
  const auto reqs = make_requests(4);
  SessionStats stats;
  auto outcomes = run_adapter_session(std::make_unique<StdioTransport>(adapter_cmd("--policy replay")),
                                      reqs, {RunMode::kVerify, 5000ms, 0}, &stats);
  for (std::size_t i = 0; i < 4; ++i) CHECK(outcomes[i].action == *reqs[i].verification_ground_truth);
  CHECK(stats.fallbacks == 0);
}

TEST_CASE("adapter closing after 3 of 5 requests") {
  const auto reqs = make_requests(5);
  SessionStats stats;
  auto outcomes = run_adapter_session(
      std::make_unique<StdioTransport>(adapter_cmd("--policy replay --exit-after 3")), reqs,
      {RunMode::kVerify, 5000ms, 0}, &stats);
  REQUIRE(outcomes.size() == 5);
  for (int i = 0; i < 3; ++i) CHECK_FALSE(outcomes[i].used_fallback);
  for (int i = 3; i < 5; ++i) CHECK(outcomes[i].reason == FallbackReason::kAdapterError);
  CHECK(stats.fallbacks_by_reason[FallbackReason::kAdapterError] == 2);
}

TEST_CASE("mismatched request id falls back") {
  const auto reqs = make_requests(3);
  auto outcomes = run_adapter_session(
      std::make_unique<StdioTransport>(adapter_cmd("--policy replay --mismatch-id")), reqs,
      {RunMode::kVerify, 5000ms, 0});
  for (const auto& o : outcomes) CHECK(o.reason == FallbackReason::kAdapterError);
}

TEST_CASE("slow reply times out and does not poison the next request") {
  const auto reqs = make_requests(3);
  SessionStats stats;
  auto outcomes = run_adapter_session(
      std::make_unique<StdioTransport>(adapter_cmd("--policy replay --slow-index 1")), reqs,
      {RunMode::kVerify, 1000ms, 0}, &stats);
  CHECK_FALSE(outcomes[0].used_fallback);
  CHECK(outcomes[1].reason == FallbackReason::kAdapterError);
  CHECK_FALSE(outcomes[2].used_fallback);
  CHECK(outcomes[2].action == *reqs[2].verification_ground_truth);
}

TEST_CASE("misbehaving policies produce their coercion reason") {
  const std::vector<std::pair<std::string, FallbackReason>> cases = {
      {"wrong_length", FallbackReason::kWrongLength},
      {"text", FallbackReason::kMixedText},
      {"mixed", FallbackReason::kMixedText},
      {"nonscalar", FallbackReason::kNonScalarElement},
      {"error", FallbackReason::kAdapterError},
  };
  const auto reqs = make_requests(3);
  for (const auto& [policy, reason] : cases) {
    SessionStats stats;
    auto outcomes = run_adapter_session(
        std::make_unique<StdioTransport>(adapter_cmd("--policy " + policy)), reqs,
        {RunMode::kEval, 5000ms, 0}, &stats);
    for (const auto& o : outcomes) CHECK(o.reason == reason);
    CHECK(stats.fallbacks_by_reason[reason] == 3);
  }
}

TEST_CASE("handshake failures") {
  const auto reqs = make_requests(1);
  CHECK_THROWS_AS(run_adapter_session(std::make_unique<StdioTransport>(adapter_cmd("--bad-ready")),
                                      reqs, {RunMode::kEval, 2000ms, 0}),
                  HandshakeFailure);
  CHECK_THROWS_AS(run_adapter_session(std::make_unique<StdioTransport>(adapter_cmd("--no-verify")),
                                      reqs, {RunMode::kVerify, 2000ms, 0}),
                  HandshakeFailure);
  CHECK_THROWS_AS(run_adapter_session(std::make_unique<StdioTransport>("exit 0"), reqs,
                                      {RunMode::kEval, 2000ms, 0}),
                  HandshakeFailure);
  CHECK_THROWS_AS(make_transport("", "", 1000ms), ConfigError);
  CHECK_THROWS_AS(make_transport("x", "http://localhost:1/", 1000ms), ConfigError);
}

TEST_CASE("same seed gives the same fallbacks across sessions") {
  const auto reqs = make_requests(4);
  auto run = [&] {
    return run_adapter_session(std::make_unique<StdioTransport>(adapter_cmd("--policy text")), reqs,
                               {RunMode::kEval, 5000ms, 99});
  };
  auto a = run(), b = run();
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].action == b[i].action);
}

TEST_CASE("http transport speaks the same protocol") {
  httplib::Server server;
  auto handler = make_echo_handler("http-echo");
  server.Post("/adapter", [&](const httplib::Request& req, httplib::Response& res) {
    std::string body;
    for (const auto& line : handler(req.body)) body += line + "\n";
    res.set_content(body, "application/x-ndjson");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread worker([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  const auto reqs = make_requests(3);
  ReadyInfo ready;
  auto outcomes = run_adapter_session(
      make_transport("", "http://127.0.0.1:" + std::to_string(port) + "/adapter", 2000ms), reqs,
      {RunMode::kVerify, 2000ms, 0}, nullptr, &ready);
  server.stop();
  worker.join();
  CHECK(ready.name == "http-echo");
  for (std::size_t i = 0; i < 3; ++i) CHECK(outcomes[i].action == *reqs[i].verification_ground_truth);
}

TEST_CASE("unreachable http endpoint fails the handshake") {
  CHECK_THROWS_AS(run_adapter_session(make_transport("", "http://127.0.0.1:1/x", 500ms),
                                      make_requests(1), {RunMode::kEval, 500ms, 0}),
                  HandshakeFailure);
}

}  // TEST_SUITE
