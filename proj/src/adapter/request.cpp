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

#include "trajbench/adapter/request.hpp"

#include "trajbench/action/transforms.hpp"
#include "trajbench/error.hpp"

namespace trajbench::adapter {

AdapterRequest build_request(const RequestContext& context, const ingest::EpisodeRecord& episode,
                             std::size_t step_index,
                             const std::optional<std::vector<double>>& ground_truth,
                             std::size_t* missing_images) {
  if (step_index >= episode.steps.size())
    throw Error("step " + std::to_string(step_index) + " out of range for episode '" +
                episode.episode_id + "'");
  const ingest::StepRecord& step = episode.steps[step_index];

  AdapterRequest r;
  r.action_space = context.action_space;
  r.request_id = make_request_id(context.dataset, episode.episode_id, step_index);
  r.dataset = context.dataset;
  r.step_index = step_index;
  r.observation_states = ingest::float_observations(step);

  r.observation_vector = action::flatten_map(r.observation_states);

  try {
    r.images = select_images(step, context.image_policy, context.mapping);
  } catch (const NoImageAvailable&) {
    if (missing_images) ++*missing_images;
  }
  if (context.four_channel_images)
    for (auto& [view, img] : r.images) img = to_four_channel(img);

  r.instruction = episode.instruction;
  r.action_stats = context.action_stats;
  r.task_description = context.task_description;
  r.verification_ground_truth = ground_truth;
  return r;
}

}  // namespace trajbench::adapter
