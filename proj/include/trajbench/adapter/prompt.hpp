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

#include <string>
#include <vector>

#include "trajbench/adapter/protocol.hpp"

namespace trajbench::adapter {

struct PromptSection {
  std::string marker;  // e.g. "## STATE"
  std::string body;
};

/// Structured text prompt for text-native models. Sections, in order:
/// STATE, INSTRUCTION, ACTION DIMENSIONS, ACTION STATISTICS, TASK (only with a
/// task description), OUTPUT FORMAT. Identical requests give identical text.
std::vector<PromptSection> build_prompt_payload(const AdapterRequest& request);

std::string render_prompt(const std::vector<PromptSection>& sections);

}  // namespace trajbench::adapter
