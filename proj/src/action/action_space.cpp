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

#include "trajbench/action/action_space.hpp"

#include <array>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "trajbench/error.hpp"

namespace trajbench::action {
namespace {

struct KindToken {
  DimKind kind;
  const char* token;   // signature notation
  const char* name;    // registry/json name
};

// Multi-word tokens first.
constexpr std::array<KindToken, 11> kKinds{{
    {DimKind::kAngularVelocity, "ang vel", "angular_velocity"},
    {DimKind::kTorque, "grip torque", "torque"},
    {DimKind::kGain, "gain coeff", "gain"},
    {DimKind::kDamping, "damping ratio coeff", "damping"},
    {DimKind::kPosition, "pos", "position"},
    {DimKind::kAngular, "ang", "angular"},
    {DimKind::kGripper, "grip", "gripper"},
    {DimKind::kTerminal, "term", "terminal"},
    {DimKind::kVelocity, "vel", "velocity"},
    {DimKind::kPose, "pose", "pose"},
    {DimKind::kQuaternion, "quat", "quaternion"},
}};

const KindToken& lookup(DimKind kind) {
  for (const auto& k : kKinds)
    if (k.kind == kind) return k;
  throw Error("unhandled DimKind");
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::string collapse_spaces(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!out.empty() && out.back() != ' ') out += ' ';
    } else {
      out += c;
    }
  }
  return trim(out);
}

int parse_count(const std::string& s, const std::string& context) {
  if (s.empty() || s.size() > 6) throw SignatureError("bad count in '" + context + "'");
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw SignatureError("bad count in '" + context + "'");
  int v = std::stoi(s);
  if (v < 1) throw SignatureError("count must be positive in '" + context + "'");
  return v;
}

SignatureGroup parse_group(const std::string& raw) {
  std::string g = collapse_spaces(raw);
  auto sp = g.find(' ');
  if (sp == std::string::npos) throw SignatureError("group '" + g + "' lacks a kind");
  SignatureGroup group;
  group.count = parse_count(g.substr(0, sp), g);
  std::string rest = g.substr(sp + 1);
  if (auto f = rest.find(" for "); f != std::string::npos) {
    group.qualifier = trim(rest.substr(f + 5));
    rest = rest.substr(0, f);
    if (group.qualifier.empty()) throw SignatureError("empty qualifier in '" + g + "'");
  }
  for (const auto& k : kKinds)
    if (rest == k.token) {
      group.kind = k.kind;
      return group;
    }
  throw SignatureError("unknown action kind '" + rest + "' in '" + g + "'");
}

std::string name_component(std::string s) {
  for (char& c : s)
    if (c == ' ') c = '_';
  return s;
}

}  // namespace

std::string to_string(DimKind kind) { return lookup(kind).name; }

DimKind dim_kind_from_string(const std::string& s) {
  for (const auto& k : kKinds)
    if (s == k.name) return k.kind;
  throw Error("unknown dimension kind '" + s + "'");
}

ActionSignature parse_signature(const std::string& text) {
  std::string s = trim(text);
  auto d = s.find('D');
  if (d == std::string::npos) throw SignatureError("signature '" + text + "' lacks '<N>D'");
  ActionSignature sig;
  sig.total = parse_count(s.substr(0, d), text);
  std::string rest = trim(s.substr(d + 1));
  if (rest.empty()) {
    throw SignatureError("signature '" + text + "' does not name its dimension kinds");
  }
  if (rest.front() != '(' || rest.back() != ')')
    throw SignatureError("signature '" + text + "' must list groups in parentheses");
  std::string body = rest.substr(1, rest.size() - 2);
  std::stringstream ss(body);
  std::string part;
  int sum = 0;
  while (std::getline(ss, part, ',')) {
    auto g = parse_group(part);
    sum += g.count;
    sig.groups.push_back(std::move(g));
  }
  if (sig.groups.empty()) throw SignatureError("signature '" + text + "' has no groups");
  if (sum != sig.total)
    throw SignatureError("signature '" + text + "' declares " + std::to_string(sig.total) +
                         " dimensions but its groups sum to " + std::to_string(sum));
  return sig;
}

std::string format_signature(const ActionSignature& signature) {
  std::string out = std::to_string(signature.total) + "D (";
  for (std::size_t i = 0; i < signature.groups.size(); ++i) {
    const auto& g = signature.groups[i];
    if (i) out += ", ";
    out += std::to_string(g.count) + " " + lookup(g.kind).token;
    if (!g.qualifier.empty()) out += " for " + g.qualifier;
  }
  return out + ")";
}

ActionSpaceSpec::ActionSpaceSpec(std::vector<DimSpec> dims, std::string unit_note)
    : dims_(std::move(dims)), unit_note_(std::move(unit_note)) {
  if (dims_.empty()) throw Error("action space needs at least one dimension");
  std::set<std::string> names;
  for (const auto& d : dims_) {
    if (!names.insert(d.name).second) throw Error("duplicate dimension name '" + d.name + "'");
    if (d.low && d.high && !(*d.low < *d.high))
      throw Error("dimension '" + d.name + "' has low >= high");
  }
}

ActionSpaceSpec ActionSpaceSpec::from_signature(const ActionSignature& signature,
                                                std::string unit_note) {
  std::vector<DimSpec> dims;
  std::map<std::string, int> next_index;
  for (const auto& g : signature.groups) {
    std::string stem = name_component(lookup(g.kind).token);
    if (!g.qualifier.empty()) stem += "_" + name_component(g.qualifier);
    for (int i = 0; i < g.count; ++i) {
      DimSpec d;
      d.kind = g.kind;
      d.name = stem + "_" + std::to_string(next_index[stem]++);
      if (!g.qualifier.empty()) d.description = std::string(lookup(g.kind).name) + " for " + g.qualifier;
      dims.push_back(std::move(d));
    }
  }
  return ActionSpaceSpec(std::move(dims), std::move(unit_note));
}

std::size_t ActionSpaceSpec::terminal_count() const {
  std::size_t n = 0;
  for (const auto& d : dims_) n += d.kind == DimKind::kTerminal;
  return n;
}

ActionSpaceSpec ActionSpaceSpec::without_terminal() const {
  std::vector<DimSpec> kept;
  for (const auto& d : dims_)
    if (d.kind != DimKind::kTerminal) kept.push_back(d);
  return ActionSpaceSpec(std::move(kept), unit_note_);
}

}  // namespace trajbench::action
