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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "trajbench/registry/descriptor.hpp"

namespace trajbench::registry {

/// Default fraction of episodes held out when a dataset has no split of its
/// own. A harness choice, configurable per run.
inline constexpr double kDefaultSplitFraction = 0.05;

struct EvalSplit {
  std::string dataset;
  /// Selected ids, ascending by split hash.
  std::vector<std::string> episode_ids;
  double fraction = kDefaultSplitFraction;
  std::uint64_t seed = 0;
};

/// FNV-1a 64 over seed (8 bytes, little-endian) | registered_name | 0x00 | episode_id.
std::uint64_t split_hash(std::uint64_t seed, const std::string& registered_name,
                         const std::string& episode_id);

/// Keeps the max(1, floor(fraction * N)) distinct ids with the smallest split
/// hash. Membership does not depend on the input order. Throws
/// PredefinedSplitExists, DomainError for fraction outside (0, 1), and
/// EmptyInput for no ids.
EvalSplit make_eval_split(const DatasetDescriptor& d, std::span<const std::string> episode_ids,
                          double fraction, std::uint64_t seed);

}  // namespace trajbench::registry
