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

#include "trajbench/serialize.hpp"

#include <set>

#include "trajbench/error.hpp"

namespace trajbench {

using nlohmann::json;

namespace json_field {

const json& require(const json& j, const char* field) {
  if (!j.is_object() || !j.contains(field))
    throw Error(std::string(field) + ": required field missing");
  return j.at(field);
}

std::string string(const json& j, const char* field) {
  const auto& v = require(j, field);
  if (!v.is_string()) throw Error(std::string(field) + ": expected a string");
  return v.get<std::string>();
}

std::string string_or(const json& j, const char* field, const std::string& fallback) {
  if (!j.contains(field) || j.at(field).is_null()) return fallback;
  return string(j, field);
}

bool boolean_or(const json& j, const char* field, bool fallback) {
  if (!j.contains(field)) return fallback;
  const auto& v = j.at(field);
  if (!v.is_boolean()) throw Error(std::string(field) + ": expected a boolean");
  return v.get<bool>();
}

long long integer(const json& j, const char* field) {
  const auto& v = require(j, field);
  if (!v.is_number_integer()) throw Error(std::string(field) + ": expected an integer");
  return v.get<long long>();
}

long long integer_or(const json& j, const char* field, long long fallback) {
  if (!j.contains(field)) return fallback;
  return integer(j, field);
}

std::vector<double> numbers(const json& j, const char* field) {
  const auto& v = require(j, field);
  if (!v.is_array()) throw Error(std::string(field) + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw Error(std::string(field) + ": expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<std::string> strings_or_empty(const json& j, const char* field) {
  if (!j.contains(field)) return {};
  const auto& v = j.at(field);
  if (!v.is_array()) throw Error(std::string(field) + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& x : v) {
    if (!x.is_string()) throw Error(std::string(field) + ": expected an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

}  // namespace json_field

namespace jf = json_field;

json to_json(const ingest::KeyMapping& m) {
  json images = json::array();
  for (const auto& k : m.image_keys)
    images.push_back({{"key", k.key}, {"view", k.view}, {"width", k.width},
                      {"height", k.height}, {"channels", k.channels}});
  return {
      {"layout", ingest::to_string(m.layout)},
      {"observation_keys", m.observation_keys},
      {"text_keys", m.text_keys},
      {"action_keys", m.action_keys},
      {"image_keys", images},
      {"primary_view", m.primary_view},
      {"instruction_key", m.instruction_key ? json(*m.instruction_key) : json(nullptr)},
      {"image_encoding", ingest::to_string(m.image_encoding)},
      {"episode_id_key", m.episode_id_key},
      {"is_last_key", m.is_last_key},
      {"is_terminal_key", m.is_terminal_key},
      {"step_count_key", m.step_count_key},
      {"step_prefix", m.step_prefix},
  };
}

ingest::KeyMapping key_mapping_from_json(const json& j) {
  if (!j.is_object()) throw Error("key_mapping: expected an object");
  ingest::KeyMapping m;
  m.layout = ingest::record_layout_from_string(jf::string_or(j, "layout", "per_step"));
  m.observation_keys = jf::strings_or_empty(j, "observation_keys");
  m.text_keys = jf::strings_or_empty(j, "text_keys");
  m.action_keys = jf::strings_or_empty(j, "action_keys");
  if (j.contains("image_keys")) {
    if (!j["image_keys"].is_array()) throw Error("image_keys: expected an array");
    for (const auto& k : j["image_keys"]) {
      ingest::ImageKey key;
      key.key = jf::string(k, "key");
      key.view = jf::string_or(k, "view", key.key);
      key.width = static_cast<int>(jf::integer_or(k, "width", 0));
      key.height = static_cast<int>(jf::integer_or(k, "height", 0));
      key.channels = static_cast<int>(jf::integer_or(k, "channels", 0));
      m.image_keys.push_back(std::move(key));
    }
  }
  m.primary_view = jf::string_or(j, "primary_view", "");
  if (j.contains("instruction_key") && !j["instruction_key"].is_null())
    m.instruction_key = jf::string(j, "instruction_key");
  m.image_encoding = ingest::image_encoding_from_string(jf::string_or(j, "image_encoding", "raw"));
  m.episode_id_key = jf::string_or(j, "episode_id_key", m.episode_id_key);
  m.is_last_key = jf::string_or(j, "is_last_key", m.is_last_key);
  m.is_terminal_key = jf::string_or(j, "is_terminal_key", m.is_terminal_key);
  m.step_count_key = jf::string_or(j, "step_count_key", m.step_count_key);
  m.step_prefix = jf::string_or(j, "step_prefix", m.step_prefix);
  return m;
}

std::vector<std::string> key_mapping_problems(const ingest::KeyMapping& m) {
  std::vector<std::string> problems;
  if (m.action_keys.empty()) problems.push_back("key mapping declares no action keys");
  std::set<std::string> views;
  for (const auto& k : m.image_keys) {
    if (k.key.empty() || k.view.empty()) problems.push_back("image key with an empty name or view");
    if (!views.insert(k.view).second) problems.push_back("image view '" + k.view + "' mapped twice");
    if (m.image_encoding == ingest::ImageEncoding::kRaw &&
        (k.width <= 0 || k.height <= 0 || k.channels < 1 || k.channels > 4))
      problems.push_back("raw image key '" + k.key + "' lacks a valid width/height/channels");
  }
  if (!m.primary_view.empty() && !views.count(m.primary_view))
    problems.push_back("primary view '" + m.primary_view + "' is not a mapped image view");
  return problems;
}

json to_json(const action::ActionStats& s) {
  return {{"min", s.min}, {"max", s.max}, {"mean", s.mean},
          {"q01", s.q01}, {"q99", s.q99}, {"sample_count", s.sample_count}};
}

action::ActionStats stats_from_json(const json& j) {
  action::ActionStats s;
  s.min = jf::numbers(j, "min");
  s.max = jf::numbers(j, "max");
  s.mean = jf::numbers(j, "mean");
  s.q01 = jf::numbers(j, "q01");
  s.q99 = jf::numbers(j, "q99");
  long long n = jf::integer(j, "sample_count");
  if (n < 1) throw Error("sample_count: must be at least 1");
  s.sample_count = static_cast<std::size_t>(n);
  const std::size_t d = s.min.size();
  if (s.max.size() != d || s.mean.size() != d || s.q01.size() != d || s.q99.size() != d)
    throw Error("stats: per-dimension arrays differ in length");
  for (std::size_t i = 0; i < d; ++i)
    if (!(s.min[i] <= s.q01[i] && s.q01[i] <= s.q99[i] && s.q99[i] <= s.max[i]))
      throw Error("stats: dimension " + std::to_string(i) + " violates min <= q01 <= q99 <= max");
  return s;
}

json to_json(const action::ActionSpaceSpec& spec) {
  json dims = json::array();
  for (const auto& d : spec.dims())
    dims.push_back({{"name", d.name},
                    {"kind", action::to_string(d.kind)},
                    {"low", d.low ? json(*d.low) : json(nullptr)},
                    {"high", d.high ? json(*d.high) : json(nullptr)},
                    {"description", d.description}});
  return {{"dims", dims}, {"unit_note", spec.unit_note()}};
}

action::ActionSpaceSpec action_space_from_json(const json& j) {
  const auto& arr = jf::require(j, "dims");
  if (!arr.is_array()) throw Error("dims: expected an array");
  std::vector<action::DimSpec> dims;
  for (const auto& d : arr) {
    action::DimSpec dim;
    dim.name = jf::string(d, "name");
    dim.kind = action::dim_kind_from_string(jf::string(d, "kind"));
    if (d.contains("low") && !d["low"].is_null()) dim.low = d["low"].get<double>();
    if (d.contains("high") && !d["high"].is_null()) dim.high = d["high"].get<double>();
    dim.description = jf::string_or(d, "description", "");
    dims.push_back(std::move(dim));
  }
  return action::ActionSpaceSpec(std::move(dims), jf::string_or(j, "unit_note", ""));
}

}  // namespace trajbench
