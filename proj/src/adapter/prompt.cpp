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

#include "trajbench/adapter/prompt.hpp"

#include "trajbench/error.hpp"
#include "trajbench/util.hpp"

namespace trajbench::adapter {
namespace {

std::string vector_text(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_double(v[i]);
  }
  return out + "]";
}

std::string default_description(action::DimKind kind) {
  using action::DimKind;
  switch (kind) {
    case DimKind::kPosition: return "end-effector position component";
    case DimKind::kAngular: return "end-effector rotation component";
    case DimKind::kGripper: return "gripper command";
    case DimKind::kTerminal: return "episode termination flag";
    case DimKind::kVelocity: return "linear velocity component";
    case DimKind::kAngularVelocity: return "angular velocity component";
    case DimKind::kTorque: return "gripper torque command";
    case DimKind::kGain: return "controller gain coefficient";
    case DimKind::kDamping: return "controller damping ratio coefficient";
    case DimKind::kPose: return "pose component";
    case DimKind::kQuaternion: return "orientation quaternion component";
  }
  return "action component";
}

}  // namespace

std::vector<PromptSection> build_prompt_payload(const AdapterRequest& r) {
  const auto& dims = r.action_space.dims();
  if (r.action_stats.dims() != dims.size())
    throw LengthMismatch(dims.size(), r.action_stats.dims());

  std::vector<PromptSection> sections;

  std::string state;
  for (const auto& [key, values] : r.observation_states)
    state += key + ": " + vector_text(values) + "\n";
  if (state.empty()) state = "No floating-point observation states are available.\n";
  sections.push_back({"## STATE", state});

  sections.push_back(
      {"## INSTRUCTION", (r.instruction ? *r.instruction : "No instruction provided.") + "\n"});

  std::string described;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const auto& d = dims[i];
    described += std::to_string(i) + ". " + d.name + " (" + action::to_string(d.kind) + "): " +
                 (d.description.empty() ? default_description(d.kind) : d.description);
    if (d.low && d.high)
      described += "; valid range [" + format_double(*d.low) + ", " + format_double(*d.high) + "]";
    described += "\n";
  }
  sections.push_back({"## ACTION DIMENSIONS", described});

  std::string stats;
  for (std::size_t i = 0; i < dims.size(); ++i)
    stats += std::to_string(i) + ". " + dims[i].name + ": min=" +
             format_double(r.action_stats.min[i]) + ", max=" + format_double(r.action_stats.max[i]) +
             ", mean=" + format_double(r.action_stats.mean[i]) + "\n";
  sections.push_back({"## ACTION STATISTICS", stats});

  if (r.task_description) sections.push_back({"## TASK", *r.task_description + "\n"});

  sections.push_back(
      {"## OUTPUT FORMAT",
       "Respond with only a list of exactly " + std::to_string(dims.size()) +
           " numbers, one per action dimension in the order listed above, formatted as "
           "[v0, v1, ...]. Do not include any other text.\n"});
  return sections;
}

std::string render_prompt(const std::vector<PromptSection>& sections) {
  std::string out;
  for (std::size_t i = 0; i < sections.size(); ++i) {
    if (i) out += "\n";
    out += sections[i].marker + "\n" + sections[i].body;
  }
  return out;
}

}  // namespace trajbench::adapter
