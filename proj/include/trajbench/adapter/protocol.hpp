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

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "trajbench/action/action_space.hpp"
#include "trajbench/action/stats.hpp"
#include "trajbench/adapter/image_prep.hpp"

namespace trajbench::adapter {

inline constexpr int kProtocolVersion = 1;

enum class RunMode { kEval, kVerify };
std::string to_string(RunMode m);
RunMode run_mode_from_string(const std::string& s);

/// Everything an adapter sees for one prediction. Built from a single step;
/// carries no history.
struct AdapterRequest {
  std::string request_id;
  std::string dataset;
  std::size_t step_index = 0;
  std::vector<double> observation_vector;
  /// The float observations behind observation_vector, by key.
  std::map<std::string, std::vector<double>> observation_states;
  std::vector<NamedImage> images;
  std::optional<std::string> instruction;
  action::ActionSpaceSpec action_space;
  action::ActionStats action_stats;
  std::optional<std::string> task_description;
  /// Present only in verify mode.
  std::optional<std::vector<double>> verification_ground_truth;

  std::size_t expected_dim() const { return action_space.size(); }
};

struct ActionPayload {
  /// The "action" value exactly as received; may be malformed.
  nlohmann::json values;
};
struct TextPayload {
  std::string text;
};
struct ErrorPayload {
  std::string message;
};

struct AdapterResponse {
  std::string request_id;
  std::variant<ActionPayload, TextPayload, ErrorPayload> payload;

  static AdapterResponse action(std::string id, const std::vector<double>& values);
  static AdapterResponse text(std::string id, std::string text);
  static AdapterResponse error(std::string id, std::string message);
};

struct ReadyInfo {
  std::string name;
  long long max_image_bytes = 0;
  bool supports_verify = false;
};

// ---- wire messages (one JSON object per line) ----

nlohmann::json hello_message(RunMode mode);
nlohmann::json ready_message(const ReadyInfo& info);
/// Throws trajbench::Error if the message is not a well-formed ready reply.
ReadyInfo parse_ready(const nlohmann::json& message);
nlohmann::json bye_message();

/// Images whose raw size exceeds `max_image_bytes` (when positive) are left
/// out; `dropped_images` counts them.
nlohmann::json predict_message(const AdapterRequest& request, const std::string& prompt,
                               long long max_image_bytes = 0,
                               std::size_t* dropped_images = nullptr);

/// Accepts result and error messages. Throws trajbench::Error otherwise.
AdapterResponse parse_response(const nlohmann::json& message);
nlohmann::json response_message(const AdapterResponse& response);

}  // namespace trajbench::adapter
