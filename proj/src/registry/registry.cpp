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

#include "trajbench/registry/registry.hpp"

#include <fstream>
#include <set>

#include "trajbench/error.hpp"
#include "trajbench/serialize.hpp"
#include "trajbench/util.hpp"

namespace trajbench::registry {

using nlohmann::json;
namespace jf = json_field;

FeatureTuple feature_tuple(const DatasetDescriptor& d) {
  return {d.robot_model,  d.gripper_spec,  d.action_signature, d.rgb_cameras,  d.depth_cameras,
          d.wrist_cameras, d.has_language, d.has_calibration,  d.has_proprio};
}

Registry::Registry(std::vector<DatasetDescriptor> datasets, int version)
    : version_(version), datasets_(std::move(datasets)) {
  std::set<std::string> names;
  for (const auto& d : datasets_)
    if (!names.insert(d.registered_name).second)
      throw Error("registered name '" + d.registered_name + "' appears twice");
}

const DatasetDescriptor* Registry::find(const std::string& name) const {
  for (const auto& d : datasets_)
    if (d.registered_name == name) return &d;
  for (const auto& d : datasets_)
    if (d.name == name) return &d;
  return nullptr;
}

const DatasetDescriptor& Registry::get(const std::string& name) const {
  if (const auto* d = find(name)) return *d;
  throw UnknownDataset(name);
}

DatasetDescriptor descriptor_from_json(const json& j) {
  if (!j.is_object()) throw Error("dataset entry must be an object");
  DatasetDescriptor d;
  d.registered_name = jf::string(j, "registered_name");
  d.name = jf::string_or(j, "name", d.registered_name);
  d.robot_model = jf::string(j, "robot_model");
  d.gripper_spec = jf::string_or(j, "gripper_spec", "");

  const auto& space = jf::require(j, "action_space");
  auto signature = action::parse_signature(jf::string(space, "signature"));
  d.action_signature = action::format_signature(signature);
  d.action_space = action::ActionSpaceSpec::from_signature(signature,
                                                           jf::string_or(space, "unit_note", ""));
  if (space.contains("dims")) {
    const auto& overrides = space["dims"];
    if (!overrides.is_array() || overrides.size() != d.action_space.size())
      throw Error("action_space.dims: expected one entry per signature dimension (" +
                  std::to_string(d.action_space.size()) + ")");
    auto dims = d.action_space.dims();
    for (std::size_t i = 0; i < dims.size(); ++i) {
      const auto& o = overrides[i];
      dims[i].name = jf::string_or(o, "name", dims[i].name);
      if (o.contains("kind") && action::dim_kind_from_string(jf::string(o, "kind")) != dims[i].kind)
        throw Error("action_space.dims[" + std::to_string(i) + "]: kind disagrees with signature");
      dims[i].description = jf::string_or(o, "description", dims[i].description);
      if (o.contains("low") && !o["low"].is_null()) dims[i].low = o["low"].get<double>();
      if (o.contains("high") && !o["high"].is_null()) dims[i].high = o["high"].get<double>();
    }
    d.action_space = action::ActionSpaceSpec(std::move(dims), d.action_space.unit_note());
  }

  auto count = [&](const char* field) {
    long long v = jf::integer_or(j, field, 0);
    if (v < 0) throw Error(std::string(field) + ": must be non-negative");
    return static_cast<int>(v);
  };
  d.rgb_cameras = count("rgb_cameras");
  d.depth_cameras = count("depth_cameras");
  d.wrist_cameras = count("wrist_cameras");
  d.has_language = jf::boolean_or(j, "has_language", false);
  d.has_calibration = jf::boolean_or(j, "has_calibration", false);
  d.has_proprio = jf::boolean_or(j, "has_proprio", false);
  long long episodes = jf::integer(j, "episode_count");
  if (episodes < 1) throw Error("episode_count: must be at least 1");
  d.episode_count = static_cast<std::size_t>(episodes);
  d.key_mapping = key_mapping_from_json(jf::require(j, "key_mapping"));
  d.has_predefined_eval_split = jf::boolean_or(j, "has_predefined_eval_split", false);
  if (j.contains("task_description") && !j["task_description"].is_null())
    d.task_description = jf::string(j, "task_description");
  if (j.contains("conversions")) {
    const auto& c = j["conversions"];
    d.conversions.gripper_mode =
        action::gripper_mode_from_string(jf::string_or(c, "gripper_mode", "none"));
    d.conversions.strip_terminal = jf::boolean_or(c, "strip_terminal", false);
    d.conversions.unnormalize =
        action::unnormalize_mode_from_string(jf::string_or(c, "unnormalize", "none"));
  }
  if (j.contains("official_stats") && !j["official_stats"].is_null()) {
    d.official_stats = stats_from_json(j["official_stats"]);
    if (d.official_stats->dims() != d.action_space.size())
      throw Error("official_stats: dimension count differs from the action space");
  }
  return d;
}

json descriptor_to_json(const DatasetDescriptor& d) {
  json dims = json::array();
  for (const auto& dim : d.action_space.dims())
    dims.push_back({{"name", dim.name},
                    {"kind", action::to_string(dim.kind)},
                    {"description", dim.description},
                    {"low", dim.low ? json(*dim.low) : json(nullptr)},
                    {"high", dim.high ? json(*dim.high) : json(nullptr)}});
  json j{
      {"name", d.name},
      {"registered_name", d.registered_name},
      {"robot_model", d.robot_model},
      {"gripper_spec", d.gripper_spec},
      {"action_space",
       {{"signature", d.action_signature}, {"unit_note", d.action_space.unit_note()}, {"dims", dims}}},
      {"rgb_cameras", d.rgb_cameras},
      {"depth_cameras", d.depth_cameras},
      {"wrist_cameras", d.wrist_cameras},
      {"has_language", d.has_language},
      {"has_calibration", d.has_calibration},
      {"has_proprio", d.has_proprio},
      {"episode_count", d.episode_count},
      {"key_mapping", to_json(d.key_mapping)},
      {"has_predefined_eval_split", d.has_predefined_eval_split},
      {"task_description", d.task_description ? json(*d.task_description) : json(nullptr)},
      {"conversions",
       {{"gripper_mode", action::to_string(d.conversions.gripper_mode)},
        {"strip_terminal", d.conversions.strip_terminal},
        {"unnormalize", action::to_string(d.conversions.unnormalize)}}},
  };
  if (d.official_stats) j["official_stats"] = to_json(*d.official_stats);
  return j;
}

std::vector<Diagnostic> validate_registry(const json& document) {
  std::vector<Diagnostic> out;
  if (!document.is_object()) {
    out.push_back({"$", "registry must be a JSON object"});
    return out;
  }
  if (!document.contains("version") || !document["version"].is_number_integer())
    out.push_back({"$.version", "missing integer field 'version'"});
  else if (document["version"].get<long long>() != kRegistryVersion)
    out.push_back({"$.version", "unsupported registry version " +
                                    std::to_string(document["version"].get<long long>())});
  if (!document.contains("datasets") || !document["datasets"].is_array()) {
    out.push_back({"$.datasets", "missing array field 'datasets'"});
    return out;
  }
  std::set<std::string> names;
  const auto& datasets = document["datasets"];
  for (std::size_t i = 0; i < datasets.size(); ++i) {
    const auto& entry = datasets[i];
    std::string subject = "$.datasets[" + std::to_string(i) + "]";
    if (entry.is_object() && entry.contains("registered_name") &&
        entry["registered_name"].is_string()) {
      subject = entry["registered_name"].get<std::string>();
      if (!names.insert(subject).second)
        out.push_back({subject, "registered name appears more than once"});
    }
    try {
      DatasetDescriptor d = descriptor_from_json(entry);
      for (auto& problem : key_mapping_problems(d.key_mapping)) out.push_back({subject, problem});
    } catch (const std::exception& e) {
      out.push_back({subject, e.what()});
    }
  }
  return out;
}

Registry registry_from_json(const json& document) {
  auto diagnostics = validate_registry(document);
  if (!diagnostics.empty())
    throw Error("invalid registry: " + diagnostics.front().subject + ": " +
                diagnostics.front().message);
  std::vector<DatasetDescriptor> datasets;
  for (const auto& entry : document["datasets"]) datasets.push_back(descriptor_from_json(entry));
  return Registry(std::move(datasets), document["version"].get<int>());
}

json registry_to_json(const Registry& registry) {
  json datasets = json::array();
  for (const auto& d : registry.datasets()) datasets.push_back(descriptor_to_json(d));
  return {{"version", registry.version()}, {"datasets", datasets}};
}

Registry load_registry(const std::string& path) {
  json document;
  try {
    document = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error("registry '" + path + "' is not valid JSON: " + e.what());
  }
  return registry_from_json(document);
}

void save_registry(const Registry& registry, const std::string& path) {
  write_file(path, registry_to_json(registry).dump(2) + "\n");
}

}  // namespace trajbench::registry
