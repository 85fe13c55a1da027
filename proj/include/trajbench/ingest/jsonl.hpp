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

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "trajbench/ingest/episode.hpp"

namespace trajbench::ingest {

/// One episode object per line:
///   {"episode_id": str, "instruction": str|null,
///    "steps": [{"observation": {key: [floats] | {"image": {"w","h","c","b64"}} | str},
///               "action": {key: [floats]}, "is_terminal": bool}]}
/// Blank lines are ignored. Throws SchemaViolation with a 1-based line number.
std::vector<EpisodeRecord> parse_jsonl_episodes(std::istream& in);
std::vector<EpisodeRecord> load_jsonl_episodes(const std::string& path);

std::string episode_to_jsonl(const EpisodeRecord& episode);

}  // namespace trajbench::ingest
