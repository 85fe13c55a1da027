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

#include "trajbench/ingest/image.hpp"

namespace trajbench::ingest {

enum class RecordLayout {
  /// One record per step; an episode ends at a record whose boundary flag is
  /// set or when the episode id changes.
  kPerStep,
  /// One record per episode; step features are concatenated under a key
  /// prefix and the step count is stored in a length feature.
  kPerEpisode,
};

std::string to_string(RecordLayout layout);
RecordLayout record_layout_from_string(const std::string& s);

/// A source image feature and the canonical view name it is ingested under.
/// Width/height/channels are required for raw encoding and checked for PNG
/// when non-zero.
struct ImageKey {
  std::string key;
  std::string view;
  int width = 0;
  int height = 0;
  int channels = 0;

  friend bool operator==(const ImageKey&, const ImageKey&) = default;
};

/// Per-dataset description of which source features carry what.
struct KeyMapping {
  RecordLayout layout = RecordLayout::kPerStep;
  std::vector<std::string> observation_keys;
  std::vector<std::string> text_keys;
  std::vector<std::string> action_keys;
  std::vector<ImageKey> image_keys;
  /// Empty means the first declared image view.
  std::string primary_view;
  std::optional<std::string> instruction_key;
  ImageEncoding image_encoding = ImageEncoding::kRaw;

  std::string episode_id_key = "episode_id";
  std::string is_last_key = "is_last";
  std::string is_terminal_key = "is_terminal";
  std::string step_count_key = "steps/length";
  std::string step_prefix = "steps/";

  std::vector<std::string> image_views() const;
  /// Primary view name, or nullopt when no images are mapped.
  std::optional<std::string> primary() const;

  friend bool operator==(const KeyMapping&, const KeyMapping&) = default;
};

}  // namespace trajbench::ingest
