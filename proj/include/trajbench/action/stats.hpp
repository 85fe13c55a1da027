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
#include <span>
#include <vector>

#include "trajbench/action/action_space.hpp"
#include "trajbench/ingest/episode.hpp"

namespace trajbench::action {

/// Per-dimension summary of a dataset's actions. q01/q99 are nearest-rank
/// percentiles: the ceil(p N)-th smallest sample.
struct ActionStats {
  std::vector<double> min;
  std::vector<double> max;
  std::vector<double> mean;
  std::vector<double> q01;
  std::vector<double> q99;
  std::size_t sample_count = 0;

  std::size_t dims() const { return min.size(); }
  /// Keeps only the listed dimensions, in the given order.
  ActionStats select(std::span<const std::size_t> indices) const;

  friend bool operator==(const ActionStats&, const ActionStats&) = default;
};

/// Mergeable accumulator. Keeps every sample for exact percentiles;
/// partitions can be folded independently and merged in a fixed order.
class StatsAccumulator {
 public:
  explicit StatsAccumulator(std::size_t dims) : columns_(dims) {}

  /// Throws LengthMismatch if the sample width differs.
  void add(std::span<const double> sample);
  void merge(const StatsAccumulator& other);
  std::size_t count() const { return columns_.empty() ? 0 : columns_.front().size(); }

  /// Throws EmptyInput with no samples.
  ActionStats finish() const;

 private:
  std::vector<std::vector<double>> columns_;
};

/// 1-based nearest rank for percentile `percent` (0 < percent <= 100) of n
/// samples, computed in integers.
std::size_t nearest_rank(std::size_t n, unsigned percent);

/// Stats of every step's flattened action map. Throws EmptyInput with no
/// steps and LengthMismatch if a step's width differs from the spec.
ActionStats compute_action_stats(std::span<const ingest::EpisodeRecord> episodes,
                                 const ActionSpaceSpec& spec);

/// Indices of the non-terminal dimensions.
std::vector<std::size_t> non_terminal_indices(const ActionSpaceSpec& spec);

}  // namespace trajbench::action
