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

#include "trajbench/ingest/episode.hpp"

#include <cmath>

#include "trajbench/error.hpp"
#include "trajbench/ingest/key_mapping.hpp"

namespace trajbench::ingest {

std::map<std::string, FloatVector> float_observations(const StepRecord& step) {
  std::map<std::string, FloatVector> out;
  for (const auto& [key, value] : step.observation)
    if (const auto* v = std::get_if<FloatVector>(&value)) out.emplace(key, *v);
  return out;
}

void validate_episode(const EpisodeRecord& episode) {
  if (episode.steps.empty()) throw Error("episode '" + episode.episode_id + "' has no steps");
  auto check = [&](const FloatVector& v, const std::string& key, std::size_t step) {
    for (double x : v)
      if (!std::isfinite(x))
        throw Error("episode '" + episode.episode_id + "': non-finite value in '" + key +
                    "' at step " + std::to_string(step));
  };
  for (std::size_t i = 0; i < episode.steps.size(); ++i) {
    const auto& step = episode.steps[i];
    for (const auto& [key, value] : step.action) check(value, key, i);
    for (const auto& [key, value] : step.observation) {
      if (const auto* v = std::get_if<FloatVector>(&value)) check(*v, key, i);
      if (const auto* img = std::get_if<Image>(&value); img && !img->valid())
        throw ImageDecodeError(key, i, "image geometry does not match its data");
    }
  }
}

std::string to_string(RecordLayout layout) {
  return layout == RecordLayout::kPerEpisode ? "per_episode" : "per_step";
}

RecordLayout record_layout_from_string(const std::string& s) {
  if (s == "per_step") return RecordLayout::kPerStep;
  if (s == "per_episode") return RecordLayout::kPerEpisode;
  throw Error("unknown record layout '" + s + "' (expected per_step or per_episode)");
}

std::vector<std::string> KeyMapping::image_views() const {
  std::vector<std::string> views;
  for (const auto& k : image_keys) views.push_back(k.view);
  return views;
}

std::optional<std::string> KeyMapping::primary() const {
  if (!primary_view.empty()) return primary_view;
  if (image_keys.empty()) return std::nullopt;
  return image_keys.front().view;
}

}  // namespace trajbench::ingest
