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

#include "trajbench/action/stats.hpp"

#include <algorithm>

#include "trajbench/action/transforms.hpp"
#include "trajbench/error.hpp"
#include "trajbench/util.hpp"

namespace trajbench::action {

ActionStats ActionStats::select(std::span<const std::size_t> indices) const {
  ActionStats out;
  out.sample_count = sample_count;
  for (std::size_t i : indices) {
    if (i >= dims()) throw Error("stats dimension index out of range");
    out.min.push_back(min[i]);
    out.max.push_back(max[i]);
    out.mean.push_back(mean[i]);
    out.q01.push_back(q01[i]);
    out.q99.push_back(q99[i]);
  }
  return out;
}

void StatsAccumulator::add(std::span<const double> sample) {
  if (sample.size() != columns_.size()) throw LengthMismatch(columns_.size(), sample.size());
  for (std::size_t d = 0; d < sample.size(); ++d) columns_[d].push_back(sample[d]);
}

void StatsAccumulator::merge(const StatsAccumulator& other) {
  if (other.columns_.size() != columns_.size())
    throw LengthMismatch(columns_.size(), other.columns_.size());
  for (std::size_t d = 0; d < columns_.size(); ++d)
    columns_[d].insert(columns_[d].end(), other.columns_[d].begin(), other.columns_[d].end());
}

std::size_t nearest_rank(std::size_t n, unsigned percent) {
  if (n == 0 || percent == 0 || percent > 100) throw DomainError("invalid percentile request");
  std::size_t rank = (percent * n + 99) / 100;
  return std::max<std::size_t>(rank, 1);
}

ActionStats StatsAccumulator::finish() const {
  const std::size_t n = count();
  if (n == 0) throw EmptyInput("no action samples to summarize");
  ActionStats s;
  s.sample_count = n;
  const std::size_t r01 = nearest_rank(n, 1) - 1;
  const std::size_t r99 = nearest_rank(n, 99) - 1;
  for (const auto& column : columns_) {
    std::vector<double> sorted = column;
    std::sort(sorted.begin(), sorted.end());
    s.min.push_back(sorted.front());
    s.max.push_back(sorted.back());
    s.mean.push_back(pairwise_mean(column));
    s.q01.push_back(sorted[r01]);
    s.q99.push_back(sorted[r99]);
  }
  return s;
}

ActionStats compute_action_stats(std::span<const ingest::EpisodeRecord> episodes,
                                 const ActionSpaceSpec& spec) {
  StatsAccumulator acc(spec.size());
  for (const auto& ep : episodes)
    for (const auto& step : ep.steps) acc.add(flatten_map(step.action, 0));
  return acc.finish();
}

std::vector<std::size_t> non_terminal_indices(const ActionSpaceSpec& spec) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < spec.size(); ++i)
    if (spec.dims()[i].kind != DimKind::kTerminal) out.push_back(i);
  return out;
}

}  // namespace trajbench::action
