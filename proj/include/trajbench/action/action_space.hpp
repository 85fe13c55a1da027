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

namespace trajbench::action {

enum class DimKind {
  kPosition,
  kAngular,
  kGripper,
  kTerminal,
  kVelocity,
  kAngularVelocity,
  kTorque,
  kGain,
  kDamping,
  kPose,
  kQuaternion,
};

std::string to_string(DimKind kind);
DimKind dim_kind_from_string(const std::string& s);

struct DimSpec {
  std::string name;
  DimKind kind = DimKind::kPosition;
  std::optional<double> low;
  std::optional<double> high;
  /// Free-text description for prompts.
  std::string description;

  friend bool operator==(const DimSpec&, const DimSpec&) = default;
};

/// One "<count> <kind>[ for <qualifier>]" group of a signature.
struct SignatureGroup {
  int count = 0;
  DimKind kind = DimKind::kPosition;
  std::string qualifier;

  friend bool operator==(const SignatureGroup&, const SignatureGroup&) = default;
};

/// Parsed form of "<N>D (<k1> <kind1>, <k2> <kind2>, ...)".
struct ActionSignature {
  int total = 0;
  std::vector<SignatureGroup> groups;

  friend bool operator==(const ActionSignature&, const ActionSignature&) = default;
};

/// Kind tokens: pos, ang, grip, term, vel, "ang vel", "grip torque",
/// "gain coeff", "damping ratio coeff", pose, quat. Throws SignatureError on
/// bad syntax, unknown kinds, or when the group counts do not sum to N.
ActionSignature parse_signature(const std::string& text);
/// Canonical text, e.g. "8D (1 grip, 3 ang, 3 pos, 1 term)".
std::string format_signature(const ActionSignature& signature);

class ActionSpaceSpec {
 public:
  ActionSpaceSpec() = default;
  /// Throws trajbench::Error if dims is empty, names repeat, or low >= high.
  explicit ActionSpaceSpec(std::vector<DimSpec> dims, std::string unit_note = {});

  /// Dimension names are `<token>[_<qualifier>]_<index>`, e.g. pos_0, grip_0.
  static ActionSpaceSpec from_signature(const ActionSignature& signature,
                                        std::string unit_note = {});

  const std::vector<DimSpec>& dims() const { return dims_; }
  std::vector<DimSpec>& mutable_dims() { return dims_; }
  std::size_t size() const { return dims_.size(); }
  const std::string& unit_note() const { return unit_note_; }

  std::size_t terminal_count() const;
  /// The same space with terminal dimensions removed.
  ActionSpaceSpec without_terminal() const;

  friend bool operator==(const ActionSpaceSpec&, const ActionSpaceSpec&) = default;

 private:
  std::vector<DimSpec> dims_;
  std::string unit_note_;
};

}  // namespace trajbench::action
