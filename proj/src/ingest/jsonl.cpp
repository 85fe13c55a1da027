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

#include "trajbench/ingest/jsonl.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "trajbench/error.hpp"

namespace trajbench::ingest {
namespace {

using nlohmann::json;

FloatVector float_array(const json& j, std::size_t line, const std::string& where) {
  if (!j.is_array()) throw SchemaViolation(line, where + " must be an array of numbers");
  FloatVector out;
  out.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) throw SchemaViolation(line, where + " contains a non-numeric element");
    out.push_back(x.get<double>());
  }
  return out;
}

Image image_object(const json& j, std::size_t line, const std::string& where) {
  for (const char* k : {"w", "h", "c"})
    if (!j.contains(k) || !j[k].is_number_integer())
      throw SchemaViolation(line, where + ".image." + k + " must be an integer");
  if (!j.contains("b64") || !j["b64"].is_string())
    throw SchemaViolation(line, where + ".image.b64 must be a string");
  try {
    return image_from_raw(base64_decode(j["b64"].get<std::string>()), j["w"].get<int>(),
                          j["h"].get<int>(), j["c"].get<int>());
  } catch (const std::exception& e) {
    throw SchemaViolation(line, where + ".image: " + e.what());
  }
}

StepRecord parse_step(const json& j, std::size_t line, std::size_t index) {
  const std::string where = "steps[" + std::to_string(index) + "]";
  if (!j.is_object()) throw SchemaViolation(line, where + " must be an object");
  StepRecord step;
  if (!j.contains("action") || !j["action"].is_object())
    throw SchemaViolation(line, where + ".action must be an object");
  for (const auto& [key, value] : j["action"].items())
    step.action.emplace(key, float_array(value, line, where + ".action." + key));

  if (j.contains("observation")) {
    const auto& obs = j["observation"];
    if (!obs.is_object()) throw SchemaViolation(line, where + ".observation must be an object");
    for (const auto& [key, value] : obs.items()) {
      const std::string at = where + ".observation." + key;
      if (value.is_array()) {
        step.observation.emplace(key, float_array(value, line, at));
      } else if (value.is_string()) {
        step.observation.emplace(key, value.get<std::string>());
      } else if (value.is_object() && value.contains("image") && value.size() == 1) {
        step.observation.emplace(key, image_object(value["image"], line, at));
      } else {
        throw SchemaViolation(line, at + " must be a float array, an image object, or a string");
      }
    }
  }
  if (j.contains("is_terminal")) {
    if (!j["is_terminal"].is_boolean())
      throw SchemaViolation(line, where + ".is_terminal must be a boolean");
    step.is_terminal = j["is_terminal"].get<bool>();
  }
  return step;
}

EpisodeRecord parse_episode(const std::string& text, std::size_t line) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaViolation(line, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaViolation(line, "episode must be a JSON object");
  if (!j.contains("episode_id") || !j["episode_id"].is_string())
    throw SchemaViolation(line, "missing string field 'episode_id'");
  if (!j.contains("steps")) throw SchemaViolation(line, "missing field 'steps'");
  if (!j["steps"].is_array() || j["steps"].empty())
    throw SchemaViolation(line, "'steps' must be a non-empty array");

  EpisodeRecord ep;
  ep.episode_id = j["episode_id"].get<std::string>();
  if (j.contains("instruction") && !j["instruction"].is_null()) {
    if (!j["instruction"].is_string())
      throw SchemaViolation(line, "'instruction' must be a string or null");
    ep.instruction = j["instruction"].get<std::string>();
  }
  for (std::size_t i = 0; i < j["steps"].size(); ++i)
    ep.steps.push_back(parse_step(j["steps"][i], line, i));
  try {
    validate_episode(ep);
  } catch (const std::exception& e) {
    throw SchemaViolation(line, e.what());
  }
  return ep;
}

json image_json(const Image& img) {
  return json{{"image", {{"w", img.width}, {"h", img.height}, {"c", img.channels},
                         {"b64", base64_encode(img.data)}}}};
}

}  // namespace

std::vector<EpisodeRecord> parse_jsonl_episodes(std::istream& in) {
  std::vector<EpisodeRecord> out;
  std::set<std::string> ids;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto ep = parse_episode(text, line);
    if (!ids.insert(ep.episode_id).second)
      throw SchemaViolation(line, "duplicate episode_id '" + ep.episode_id + "'");
    out.push_back(std::move(ep));
  }
  return out;
}

std::vector<EpisodeRecord> load_jsonl_episodes(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return parse_jsonl_episodes(in);
}

std::string episode_to_jsonl(const EpisodeRecord& episode) {
  json steps = json::array();
  for (const auto& step : episode.steps) {
    json obs = json::object();
    for (const auto& [key, value] : step.observation) {
      if (const auto* f = std::get_if<FloatVector>(&value))
        obs[key] = *f;
      else if (const auto* img = std::get_if<Image>(&value))
        obs[key] = image_json(*img);
      else
        obs[key] = std::get<std::string>(value);
    }
    json action = json::object();
    for (const auto& [key, value] : step.action) action[key] = value;
    steps.push_back({{"observation", obs}, {"action", action}, {"is_terminal", step.is_terminal}});
  }
  json j{{"episode_id", episode.episode_id},
         {"instruction", episode.instruction ? json(*episode.instruction) : json(nullptr)},
         {"steps", steps}};
  return j.dump();
}

}  // namespace trajbench::ingest
