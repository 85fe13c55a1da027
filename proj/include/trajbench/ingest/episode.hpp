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

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "trajbench/ingest/image.hpp"

namespace trajbench::ingest {

using FloatVector = std::vector<double>;

/// An observation entry: float state, decoded image, or text.
using ObservationValue = std::variant<FloatVector, Image, std::string>;

struct StepRecord {
  std::map<std::string, ObservationValue> observation;
  std::map<std::string, FloatVector> action;
  bool is_terminal = false;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct EpisodeRecord {
  std::string episode_id;
  std::vector<StepRecord> steps;
  std::optional<std::string> instruction;

  friend bool operator==(const EpisodeRecord&, const EpisodeRecord&) = default;
};

/// Float-valued observation entries only (images and text dropped).
std::map<std::string, FloatVector> float_observations(const StepRecord& step);

/// Checks the ingestion invariants: non-empty steps, finite floats, valid
/// images. Throws trajbench::Error naming the offending key and step.
void validate_episode(const EpisodeRecord& episode);

}  // namespace trajbench::ingest
