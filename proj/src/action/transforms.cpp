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

#include "trajbench/action/transforms.hpp"

#include <algorithm>

#include "trajbench/error.hpp"

namespace trajbench::action {
namespace {

void check_unit_interval(double x, const char* op) {
  if (!(x >= -kUnitIntervalTolerance && x <= 1.0 + kUnitIntervalTolerance))
    throw DomainError(std::string(op) + ": input " + std::to_string(x) + " outside [0, 1]");
}

bool is_gripper_like(DimKind k) { return k == DimKind::kGripper || k == DimKind::kTorque; }

}  // namespace

FloatVector flatten_map(const std::map<std::string, FloatVector>& values,
                        std::size_t fallback_length) {
  if (values.empty()) return FloatVector(fallback_length, 0.0);
  FloatVector out;
  for (const auto& [key, v] : values) out.insert(out.end(), v.begin(), v.end());
  return out;
}

int gripper_binary(double x) {
  check_unit_interval(x, "gripper_binary");
  return x >= 0.5 ? 1 : 0;
}

int gripper_ternary(double x) {
  check_unit_interval(x, "gripper_ternary");
  if (x < 0.05) return -1;
  if (x > 0.95) return 1;
  return 0;
}

double normalize_continuous(double x, double low, double high, RangeViolations* violations,
                            const std::string& dim) {
  if (!(high > low)) throw DegenerateRange("normalize_continuous: high must exceed low");
  if (x < low || x > high) {
    if (violations) violations->record(dim);
    x = std::clamp(x, low, high);
  }
  return 2.0 * (x - low) / (high - low) - 1.0;
}

double unnormalize_percentile(double normalized, double q01, double q99) {
  if (!(q99 > q01)) throw DegenerateRange("unnormalize_percentile: q99 must exceed q01");
  return 0.5 * (normalized + 1.0) * (q99 - q01) + q01;
}

FloatVector strip_terminal(std::span<const double> v, const ActionSpaceSpec& spec) {
  if (v.size() != spec.size()) throw LengthMismatch(spec.size(), v.size());
  FloatVector out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (spec.dims()[i].kind != DimKind::kTerminal) out.push_back(v[i]);
  return out;
}

FloatVector scale_by_stats(std::span<const double> v, const ActionStats& stats, ScaleMode) {
  if (v.size() != stats.dims()) throw LengthMismatch(stats.dims(), v.size());
  FloatVector out(v.size());
  for (std::size_t d = 0; d < v.size(); ++d) {
    if (!(stats.max[d] > stats.min[d]))
      throw DegenerateRange("scale_by_stats: dimension " + std::to_string(d) +
                            " has max <= min");
    out[d] = v[d] * (stats.max[d] - stats.min[d]) + stats.min[d];
  }
  return out;
}

std::string to_string(GripperMode m) {
  switch (m) {
    case GripperMode::kNone: return "none";
    case GripperMode::kBinary: return "binary";
    case GripperMode::kTernary: return "ternary";
    case GripperMode::kContinuous: return "continuous";
    case GripperMode::kTorqueScale: return "torque_scale";
  }
  return "none";
}

GripperMode gripper_mode_from_string(const std::string& s) {
  for (auto m : {GripperMode::kNone, GripperMode::kBinary, GripperMode::kTernary,
                 GripperMode::kContinuous, GripperMode::kTorqueScale})
    if (to_string(m) == s) return m;
  throw Error("unknown gripper mode '" + s + "'");
}

std::string to_string(UnnormalizeMode m) {
  return m == UnnormalizeMode::kPercentile ? "percentile" : "none";
}

UnnormalizeMode unnormalize_mode_from_string(const std::string& s) {
  if (s == "none") return UnnormalizeMode::kNone;
  if (s == "percentile") return UnnormalizeMode::kPercentile;
  throw Error("unknown unnormalize mode '" + s + "'");
}

FloatVector apply_conversions(std::span<const double> prediction, const ActionSpaceSpec& spec,
                              const ActionStats& stats, const Conversions& conversions,
                              RangeViolations& violations) {
  if (prediction.size() != spec.size()) throw LengthMismatch(spec.size(), prediction.size());
  if (stats.dims() != spec.size()) throw LengthMismatch(spec.size(), stats.dims());
  FloatVector out(prediction.begin(), prediction.end());
  const bool convert_gripper = conversions.gripper_mode != GripperMode::kNone;

  for (std::size_t d = 0; d < out.size(); ++d) {
    const DimSpec& dim = spec.dims()[d];
    if (convert_gripper && is_gripper_like(dim.kind)) {
      double x = out[d];
      if (x < 0.0 || x > 1.0) {
        violations.record(dim.name);
        x = std::clamp(x, 0.0, 1.0);
      }
      switch (conversions.gripper_mode) {
        case GripperMode::kBinary: out[d] = gripper_binary(x); break;
        case GripperMode::kTernary: out[d] = gripper_ternary(x); break;
        case GripperMode::kContinuous:
          out[d] = normalize_continuous(x, dim.low.value_or(0.0), dim.high.value_or(1.0),
                                        &violations, dim.name);
          break;
        case GripperMode::kTorqueScale: {
          const std::size_t index[] = {d};
          out[d] = scale_by_stats(std::span(&x, 1), stats.select(index)).front();
          break;
        }
        case GripperMode::kNone: break;
      }
    } else if (conversions.unnormalize == UnnormalizeMode::kPercentile) {
      out[d] = unnormalize_percentile(out[d], stats.q01[d], stats.q99[d]);
    }
  }
  return out;
}

}  // namespace trajbench::action
