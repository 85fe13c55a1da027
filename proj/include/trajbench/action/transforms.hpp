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
#include <map>
#include <span>
#include <string>
#include <vector>

#include "trajbench/action/action_space.hpp"
#include "trajbench/action/stats.hpp"

namespace trajbench::action {

using FloatVector = std::vector<double>;

/// Counts inputs clamped into range before a conversion, in total and per
/// dimension name. Reported in run metadata.
struct RangeViolations {
  std::size_t total = 0;
  std::map<std::string, std::size_t> by_dim;

  void record(const std::string& dim) {
    ++total;
    ++by_dim[dim];
  }
  void merge(const RangeViolations& other) {
    total += other.total;
    for (const auto& [k, v] : other.by_dim) by_dim[k] += v;
  }
};

/// Concatenation of the vectors in key order (std::map order is
/// lexicographic). An empty map yields a zero vector of `fallback_length`.
FloatVector flatten_map(const std::map<std::string, FloatVector>& values,
                        std::size_t fallback_length = 1);

/// Inputs may exceed [0, 1] by at most this much before DomainError.
inline constexpr double kUnitIntervalTolerance = 1e-9;

/// 1 iff x >= 0.5.
int gripper_binary(double x);
/// -1 below 0.05, 1 above 0.95, 0 in [0.05, 0.95].
int gripper_ternary(double x);

/// y = 2 (x - low) / (high - low) - 1, with x clamped to [low, high]. Clamps
/// are recorded against `dim` when a counter is given.
double normalize_continuous(double x, double low, double high,
                            RangeViolations* violations = nullptr, const std::string& dim = {});

/// value = 0.5 (n + 1) (q99 - q01) + q01.
double unnormalize_percentile(double normalized, double q01, double q99);

/// Drops the components whose dimension kind is terminal.
FloatVector strip_terminal(std::span<const double> v, const ActionSpaceSpec& spec);

enum class ScaleMode { kToTorqueRange };

/// Per-component affine map of [0, 1] onto [min_d, max_d].
FloatVector scale_by_stats(std::span<const double> v, const ActionStats& stats,
                           ScaleMode mode = ScaleMode::kToTorqueRange);

enum class GripperMode { kNone, kBinary, kTernary, kContinuous, kTorqueScale };
enum class UnnormalizeMode { kNone, kPercentile };

std::string to_string(GripperMode m);
GripperMode gripper_mode_from_string(const std::string& s);
std::string to_string(UnnormalizeMode m);
UnnormalizeMode unnormalize_mode_from_string(const std::string& s);

/// Dataset-declared conversions from a model's output convention into the
/// dataset's action convention.
struct Conversions {
  GripperMode gripper_mode = GripperMode::kNone;
  bool strip_terminal = false;
  UnnormalizeMode unnormalize = UnnormalizeMode::kNone;

  friend bool operator==(const Conversions&, const Conversions&) = default;
};

/// Applies conversions to a predicted action laid out per `spec` (terminal
/// dimensions already stripped if requested). Percentile unnormalization
/// applies to non-gripper dimensions (all dimensions when gripper_mode is
/// kNone); gripper conversions apply to gripper and torque dimensions, whose
/// inputs are clamped to [0, 1] first.
FloatVector apply_conversions(std::span<const double> prediction, const ActionSpaceSpec& spec,
                              const ActionStats& stats, const Conversions& conversions,
                              RangeViolations& violations);

}  // namespace trajbench::action
