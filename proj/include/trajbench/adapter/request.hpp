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

#include <optional>
#include <string>
#include <vector>

#include "trajbench/action/action_space.hpp"
#include "trajbench/action/stats.hpp"
#include "trajbench/adapter/image_prep.hpp"
#include "trajbench/adapter/protocol.hpp"
#include "trajbench/ingest/episode.hpp"
#include "trajbench/ingest/key_mapping.hpp"

namespace trajbench::adapter {

/// Dataset-level facts shared by every request of a dataset.
struct RequestContext {
  std::string dataset;
  ingest::KeyMapping mapping;
  /// The action space the adapter must fill (terminal dims already removed
  /// when the dataset strips them) and the matching statistics.
  action::ActionSpaceSpec action_space;
  action::ActionStats action_stats;
  std::optional<std::string> task_description;
  ImagePolicy image_policy = ImagePolicy::kPrimaryOnly;
  bool four_channel_images = false;
};

inline std::string make_request_id(const std::string& dataset, const std::string& episode_id,
                                   std::size_t step_index) {
  return dataset + "/" + episode_id + "/" + std::to_string(step_index);
}

/// Builds the request for one step from that step alone. `ground_truth` is
/// attached only when given (verify mode). `missing_images` is incremented
/// when the step has no usable view; the request then carries no images.
AdapterRequest build_request(const RequestContext& context, const ingest::EpisodeRecord& episode,
                             std::size_t step_index,
                             const std::optional<std::vector<double>>& ground_truth,
                             std::size_t* missing_images = nullptr);

}  // namespace trajbench::adapter
