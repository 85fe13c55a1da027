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

#include <cstddef>
#include <optional>
#include <string>
#include <tuple>

#include "trajbench/action/action_space.hpp"
#include "trajbench/action/stats.hpp"
#include "trajbench/action/transforms.hpp"
#include "trajbench/ingest/key_mapping.hpp"

namespace trajbench::registry {

struct DatasetDescriptor {
  std::string name;
  std::string registered_name;
  std::string robot_model;
  std::string gripper_spec;
  /// Canonical signature text, e.g. "4D (1 grip, 3 pos)".
  std::string action_signature;
  action::ActionSpaceSpec action_space;
  int rgb_cameras = 0;
  int depth_cameras = 0;
  int wrist_cameras = 0;
  bool has_language = false;
  bool has_calibration = false;
  bool has_proprio = false;
  std::size_t episode_count = 1;
  ingest::KeyMapping key_mapping;
  bool has_predefined_eval_split = false;
  std::optional<std::string> task_description;
  action::Conversions conversions;
  /// Published statistics; when present they replace recomputed ones.
  std::optional<action::ActionStats> official_stats;

  friend bool operator==(const DatasetDescriptor&, const DatasetDescriptor&) = default;
};

/// The properties two datasets must share to count as redundant.
struct FeatureTuple {
  std::string robot_model;
  std::string gripper_spec;
  std::string action_signature;
  int rgb_cameras = 0;
  int depth_cameras = 0;
  int wrist_cameras = 0;
  bool has_language = false;
  bool has_calibration = false;
  bool has_proprio = false;

  auto as_tuple() const {
    return std::tie(robot_model, gripper_spec, action_signature, rgb_cameras, depth_cameras,
                    wrist_cameras, has_language, has_calibration, has_proprio);
  }
  friend bool operator==(const FeatureTuple& a, const FeatureTuple& b) {
    return a.as_tuple() == b.as_tuple();
  }
  friend bool operator<(const FeatureTuple& a, const FeatureTuple& b) {
    return a.as_tuple() < b.as_tuple();
  }
};

/// Excludes the display name, episode count, key mapping and conversions.
FeatureTuple feature_tuple(const DatasetDescriptor& d);

}  // namespace trajbench::registry
