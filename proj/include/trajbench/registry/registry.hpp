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

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "trajbench/registry/descriptor.hpp"

namespace trajbench::registry {

inline constexpr int kRegistryVersion = 1;

class Registry {
 public:
  Registry() = default;
  /// Throws trajbench::Error on duplicate registered names.
  explicit Registry(std::vector<DatasetDescriptor> datasets, int version = kRegistryVersion);

  int version() const { return version_; }
  const std::vector<DatasetDescriptor>& datasets() const { return datasets_; }

  /// Lookup by registered name or display name; throws UnknownDataset.
  const DatasetDescriptor& get(const std::string& name) const;
  const DatasetDescriptor* find(const std::string& name) const;

  friend bool operator==(const Registry&, const Registry&) = default;

 private:
  int version_ = kRegistryVersion;
  std::vector<DatasetDescriptor> datasets_;
};

struct Diagnostic {
  /// Registered name when known, else a JSON path.
  std::string subject;
  std::string message;
};

/// Collects every schema, signature and key-mapping problem without throwing.
std::vector<Diagnostic> validate_registry(const nlohmann::json& document);

/// Throws trajbench::Error carrying the first diagnostic.
Registry registry_from_json(const nlohmann::json& document);
nlohmann::json registry_to_json(const Registry& registry);

DatasetDescriptor descriptor_from_json(const nlohmann::json& j);
nlohmann::json descriptor_to_json(const DatasetDescriptor& d);

Registry load_registry(const std::string& path);
void save_registry(const Registry& registry, const std::string& path);

}  // namespace trajbench::registry
