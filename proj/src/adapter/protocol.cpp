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

#include "trajbench/adapter/protocol.hpp"

#include "trajbench/error.hpp"
#include "trajbench/serialize.hpp"
#include "trajbench/util.hpp"

namespace trajbench::adapter {

using nlohmann::json;
namespace jf = json_field;

std::string to_string(RunMode m) { return m == RunMode::kVerify ? "verify" : "eval"; }

RunMode run_mode_from_string(const std::string& s) {
  if (s == "eval") return RunMode::kEval;
  if (s == "verify") return RunMode::kVerify;
  throw Error("unknown mode '" + s + "' (expected eval or verify)");
}

AdapterResponse AdapterResponse::action(std::string id, const std::vector<double>& values) {
  return {std::move(id), ActionPayload{json(values)}};
}

AdapterResponse AdapterResponse::text(std::string id, std::string text) {
  return {std::move(id), TextPayload{std::move(text)}};
}

AdapterResponse AdapterResponse::error(std::string id, std::string message) {
  return {std::move(id), ErrorPayload{std::move(message)}};
}

json hello_message(RunMode mode) {
  return {{"type", "hello"}, {"protocol_version", kProtocolVersion}, {"mode", to_string(mode)}};
}

json ready_message(const ReadyInfo& info) {
  return {{"type", "ready"},
          {"name", info.name},
          {"max_image_bytes", info.max_image_bytes},
          {"supports_verify", info.supports_verify}};
}

ReadyInfo parse_ready(const json& message) {
  if (jf::string(message, "type") != "ready")
    throw Error("expected a ready message, got '" + message.value("type", "") + "'");
  ReadyInfo info;
  info.name = jf::string(message, "name");
  info.max_image_bytes = jf::integer(message, "max_image_bytes");
  info.supports_verify = jf::boolean_or(message, "supports_verify", false);
  return info;
}

json bye_message() { return {{"type", "bye"}}; }

json predict_message(const AdapterRequest& r, const std::string& prompt,
                     long long max_image_bytes, std::size_t* dropped_images) {
  json images = json::array();
  for (const auto& [view, img] : r.images) {
    if (max_image_bytes > 0 && static_cast<long long>(img.data.size()) > max_image_bytes) {
      if (dropped_images) ++*dropped_images;
      continue;
    }
    images.push_back({{"view", view},
                      {"encoding", "raw"},
                      {"width", img.width},
                      {"height", img.height},
                      {"channels", img.channels},
                      {"data", base64_encode(img.data)}});
  }
  json states = json::object();
  for (const auto& [k, v] : r.observation_states) states[k] = v;
  json j{
      {"type", "predict"},
      {"request_id", r.request_id},
      {"dataset", r.dataset},
      {"step_index", r.step_index},
      {"observation_vector", r.observation_vector},
      {"observation_states", states},
      {"images", images},
      {"instruction", r.instruction ? json(*r.instruction) : json(nullptr)},
      {"action_space", to_json(r.action_space)},
      {"action_stats", to_json(r.action_stats)},
      {"task_description", r.task_description ? json(*r.task_description) : json(nullptr)},
      {"expected_dim", r.expected_dim()},
      {"prompt", prompt},
  };
  if (r.verification_ground_truth) j["verification_ground_truth"] = *r.verification_ground_truth;
  return j;
}

AdapterResponse parse_response(const json& message) {
  const std::string type = jf::string(message, "type");
  AdapterResponse r;
  r.request_id = jf::string(message, "request_id");
  if (type == "error") {
    r.payload = ErrorPayload{jf::string_or(message, "message", "")};
  } else if (type == "result") {
    if (message.contains("action"))
      r.payload = ActionPayload{message["action"]};
    else if (message.contains("raw_text") && message["raw_text"].is_string())
      r.payload = TextPayload{message["raw_text"].get<std::string>()};
    else
      throw Error("result message carries neither 'action' nor 'raw_text'");
  } else {
    throw Error("unexpected message type '" + type + "'");
  }
  return r;
}

json response_message(const AdapterResponse& response) {
  json j{{"request_id", response.request_id}};
  if (const auto* a = std::get_if<ActionPayload>(&response.payload)) {
    j["type"] = "result";
    j["action"] = a->values;
  } else if (const auto* t = std::get_if<TextPayload>(&response.payload)) {
    j["type"] = "result";
    j["raw_text"] = t->text;
  } else {
    j["type"] = "error";
    j["message"] = std::get<ErrorPayload>(response.payload).message;
  }
  return j;
}

}  // namespace trajbench::adapter
