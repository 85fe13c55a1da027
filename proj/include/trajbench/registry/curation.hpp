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

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trajbench/registry/descriptor.hpp"

namespace trajbench::registry {

struct CurationDecision {
  std::vector<std::string> kept;
  /// (registered_name, reason)
  std::vector<std::pair<std::string, std::string>> dropped;
};

/// Within each group of identical feature tuples keeps only the dataset with
/// the most episodes; ties go to the lexicographically smallest registered
/// name. Drops carry "duplicate-of:<kept>". Kept names follow input order.
CurationDecision dedupe_datasets(std::span<const DatasetDescriptor> registry);

struct Exclusion {
  std::string name;
  std::string reason;
};

/// Names match either the display name or the registered name. Throws
/// UnknownDataset for a name absent from the registry.
CurationDecision exclude_datasets(std::span<const DatasetDescriptor> registry,
                                  std::span<const Exclusion> exclusions);

/// The three datasets removed after the quality and accessibility review.
std::vector<Exclusion> default_exclusions();

}  // namespace trajbench::registry
