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

#include "trajbench/registry/split.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "trajbench/error.hpp"
#include "trajbench/util.hpp"

namespace trajbench::registry {

std::uint64_t split_hash(std::uint64_t seed, const std::string& registered_name,
                         const std::string& episode_id) {
  std::array<std::uint8_t, 8> seed_bytes{};
  for (int i = 0; i < 8; ++i) seed_bytes[i] = static_cast<std::uint8_t>(seed >> (8 * i));
  std::uint64_t h = fnv1a64(seed_bytes);
  h = fnv1a64(registered_name, h);
  const std::uint8_t zero = 0;
  h = fnv1a64(std::span(&zero, 1), h);
  return fnv1a64(episode_id, h);
}

EvalSplit make_eval_split(const DatasetDescriptor& d, std::span<const std::string> episode_ids,
                          double fraction, std::uint64_t seed) {
  if (d.has_predefined_eval_split) throw PredefinedSplitExists(d.registered_name);
  if (!(fraction > 0.0 && fraction < 1.0))
    throw DomainError("split fraction must lie in (0, 1)");
  std::set<std::string> unique(episode_ids.begin(), episode_ids.end());
  if (unique.empty()) throw EmptyInput("no episodes to split");

  std::vector<std::pair<std::uint64_t, std::string>> ranked;
  for (const auto& id : unique) ranked.emplace_back(split_hash(seed, d.registered_name, id), id);
  std::sort(ranked.begin(), ranked.end());

  auto n = static_cast<double>(unique.size());
  auto count = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(fraction * n)));
  EvalSplit split{d.registered_name, {}, fraction, seed};
  for (std::size_t i = 0; i < count; ++i) split.episode_ids.push_back(ranked[i].second);
  return split;
}

}  // namespace trajbench::registry
