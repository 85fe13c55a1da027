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

#include "trajbench/registry/curation.hpp"

#include <map>
#include <set>

#include "trajbench/error.hpp"

namespace trajbench::registry {

CurationDecision dedupe_datasets(std::span<const DatasetDescriptor> registry) {
  // Winner per tuple: most episodes, then smallest registered name.
  std::map<FeatureTuple, const DatasetDescriptor*> winners;
  for (const auto& d : registry) {
    auto [it, inserted] = winners.try_emplace(feature_tuple(d), &d);
    if (inserted) continue;
    const DatasetDescriptor* best = it->second;
    if (d.episode_count > best->episode_count ||
        (d.episode_count == best->episode_count && d.registered_name < best->registered_name))
      it->second = &d;
  }
  CurationDecision out;
  for (const auto& d : registry) {
    const DatasetDescriptor* winner = winners.at(feature_tuple(d));
    if (winner == &d)
      out.kept.push_back(d.registered_name);
    else
      out.dropped.emplace_back(d.registered_name, "duplicate-of:" + winner->registered_name);
  }
  return out;
}

CurationDecision exclude_datasets(std::span<const DatasetDescriptor> registry,
                                  std::span<const Exclusion> exclusions) {
  std::map<std::string, std::string> reasons;  // registered name -> reason
  for (const auto& e : exclusions) {
    const DatasetDescriptor* match = nullptr;
    for (const auto& d : registry)
      if (d.registered_name == e.name || d.name == e.name) {
        match = &d;
        break;
      }
    if (!match) throw UnknownDataset(e.name);
    reasons.emplace(match->registered_name, e.reason);
  }
  CurationDecision out;
  for (const auto& d : registry) {
    if (auto it = reasons.find(d.registered_name); it != reasons.end())
      out.dropped.emplace_back(d.registered_name, it->second);
    else
      out.kept.push_back(d.registered_name);
  }
  return out;
}

std::vector<Exclusion> default_exclusions() {
  return {{"Austin BUDS", "quality/accessibility"},
          {"Austin Sailor", "quality/accessibility"},
          {"Stanford Kuka Multimodal", "quality/accessibility"}};
}

}  // namespace trajbench::registry
