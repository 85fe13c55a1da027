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

#include <nlohmann/json.hpp>

#include "trajbench/action/action_space.hpp"
#include "trajbench/action/stats.hpp"
#include "trajbench/ingest/key_mapping.hpp"

// JSON forms shared by the registry file, stats files and the adapter wire
// protocol. Readers throw trajbench::Error naming the offending field.
namespace trajbench {

nlohmann::json to_json(const ingest::KeyMapping& m);
ingest::KeyMapping key_mapping_from_json(const nlohmann::json& j);

nlohmann::json to_json(const action::ActionStats& s);
action::ActionStats stats_from_json(const nlohmann::json& j);

/// Self-describing form: {"dims": [{"name","kind","low","high","description"}], "unit_note"}.
nlohmann::json to_json(const action::ActionSpaceSpec& spec);
action::ActionSpaceSpec action_space_from_json(const nlohmann::json& j);

/// Problems that make a mapping unusable for ingestion; empty when complete.
std::vector<std::string> key_mapping_problems(const ingest::KeyMapping& m);

namespace json_field {

/// Typed accessors that raise trajbench::Error("<field>: ...") on mismatch.
const nlohmann::json& require(const nlohmann::json& j, const char* field);
std::string string(const nlohmann::json& j, const char* field);
std::string string_or(const nlohmann::json& j, const char* field, const std::string& fallback);
bool boolean_or(const nlohmann::json& j, const char* field, bool fallback);
long long integer(const nlohmann::json& j, const char* field);
long long integer_or(const nlohmann::json& j, const char* field, long long fallback);
std::vector<double> numbers(const nlohmann::json& j, const char* field);
std::vector<std::string> strings_or_empty(const nlohmann::json& j, const char* field);

}  // namespace json_field
}  // namespace trajbench
