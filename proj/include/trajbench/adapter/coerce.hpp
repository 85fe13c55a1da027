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

#include <optional>
#include <string>
#include <vector>

#include "trajbench/adapter/protocol.hpp"
#include "trajbench/adapter/rng.hpp"

namespace trajbench::adapter {

enum class FallbackReason { kWrongLength, kNonNumeric, kMixedText, kNonScalarElement, kAdapterError };

std::string to_string(FallbackReason r);
FallbackReason fallback_reason_from_string(const std::string& s);
inline constexpr FallbackReason kAllFallbackReasons[] = {
    FallbackReason::kWrongLength, FallbackReason::kNonNumeric, FallbackReason::kMixedText,
    FallbackReason::kNonScalarElement, FallbackReason::kAdapterError};

/// `used_fallback` holds exactly when `reason` is set.
struct CoercionOutcome {
  std::vector<double> action;
  bool used_fallback = false;
  std::optional<FallbackReason> reason;
};

/// Uniform [0, 1) vector drawn from `rng`, labeled with `reason`.
CoercionOutcome fallback_outcome(std::size_t expected_dim, FallbackReason reason,
                                 Xoshiro256StarStar& rng);

/// Total: always returns exactly `expected_dim` values. A well-formed numeric
/// vector of the right length passes through; anything else becomes a
/// fallback. Defect precedence when several apply: non-scalar element, then
/// non-numeric element, then wrong length.
///
/// Raw text is accepted only when it is a single list of decimal numbers,
/// optionally in square brackets, separated by commas and/or whitespace. Any
/// other text is mixed_text.
CoercionOutcome coerce_response(const AdapterResponse& response, std::size_t expected_dim,
                                Xoshiro256StarStar& rng);

}  // namespace trajbench::adapter
