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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace trajbench::metrics {

struct StepPair {
  std::vector<double> predicted;
  std::vector<double> ground_truth;
  bool used_fallback = false;
};

/// All scored steps of one episode, in step order.
struct TrajectoryPairs {
  std::string episode_id;
  std::vector<StepPair> steps;
};

struct TrajectoryResult {
  std::string episode_id;
  std::vector<double> step_mses;
  double trajectory_mse = 0.0;
  StepPair final_step;
};

/// Mean of squared differences. Throws LengthMismatch, EmptyInput (n = 0),
/// DomainError on non-finite input.
double step_mse(std::span<const double> predicted, std::span<const double> ground_truth);
double step_mse(const StepPair& pair);

/// Throws EmptyInput for an episode without steps.
TrajectoryResult score_trajectory(const TrajectoryPairs& trajectory);
std::vector<TrajectoryResult> score_trajectories(std::span<const TrajectoryPairs> trajectories);

/// Unweighted mean of per-trajectory means. Throws EmptyInput.
double amse(std::span<const TrajectoryResult> results);
/// Mean over all steps regardless of trajectory. Throws EmptyInput.
double flat_mse(std::span<const TrajectoryResult> results);

enum class NamseMode {
  /// Ground truth goes through the prediction range too (default).
  kBoth,
  /// Only predictions are rescaled; ground truth is compared as is.
  kPredictionsOnly,
};

std::string to_string(NamseMode m);
NamseMode namse_mode_from_string(const std::string& s);

struct NamseResult {
  /// Absent when every dimension is degenerate.
  std::optional<double> value;
  /// Dimensions whose predictions never vary; left out of the score.
  std::vector<std::size_t> degenerate_dims;
  std::vector<double> pred_min;
  std::vector<double> pred_max;
};

/// AMSE after mapping values through the per-dimension prediction range
/// u -> (u - min) / (max - min). Throws EmptyInput, LengthMismatch when
/// vector widths differ across steps.
NamseResult namse(std::span<const TrajectoryPairs> trajectories, NamseMode mode = NamseMode::kBoth);

inline constexpr double kDefaultCompletionEpsilon = 1e-2;

/// Fraction of trajectories whose final step has max |pred - gt| <= epsilon.
/// Throws EmptyInput, DomainError for negative epsilon.
double completion(std::span<const TrajectoryResult> results, double epsilon);

struct RunMetadata {
  std::uint64_t seed = 0;
  int protocol_version = 0;
  std::string adapter_name;
  std::string mode;
  double epsilon = kDefaultCompletionEpsilon;
  NamseMode namse_mode = NamseMode::kBoth;
  std::size_t namse_degenerate_dims = 0;
  std::size_t range_violations = 0;
  std::map<std::string, std::size_t> range_violations_by_dim;
  std::map<std::string, std::size_t> fallbacks_by_reason;
  std::size_t dropped_images = 0;
  std::size_t steps_without_image = 0;

  friend bool operator==(const RunMetadata&, const RunMetadata&) = default;
};

struct MetricReport {
  std::string dataset;
  std::string display_name;
  double amse = 0.0;
  std::optional<double> namse;
  double flat_mse = 0.0;
  double completion_rate = 0.0;
  double fallback_rate = 0.0;
  std::size_t n_trajectories = 0;
  std::size_t n_steps = 0;
  RunMetadata run_metadata;

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

/// Computes every metric of one dataset. `metadata` is copied in with the
/// epsilon, NAMSE mode and degenerate count filled from the computation.
/// Throws EmptyInput when there are no trajectories.
MetricReport aggregate_report(const std::string& dataset, const std::string& display_name,
                              std::span<const TrajectoryPairs> trajectories, double epsilon,
                              NamseMode namse_mode, RunMetadata metadata);

}  // namespace trajbench::metrics
