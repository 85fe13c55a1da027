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
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "trajbench/ingest/tfrecord.hpp"
#include "trajbench/util.hpp"

namespace trajbench::ingest {

using BytesList = std::vector<std::string>;
/// Float features are widened to double on decode.
using FloatList = std::vector<double>;
using Int64List = std::vector<std::int64_t>;

using FeatureList = std::variant<BytesList, FloatList, Int64List>;

/// Decoded feature-keyed example message. Keys are unique; a repeated map
/// entry for the same key replaces the earlier one, as in protobuf maps.
using FeatureMap = std::map<std::string, FeatureList>;

/// Decodes the standard example message subset:
///   Example  { Features features = 1; }
///   Features { map<string, Feature> feature = 1; }
///   Feature  { oneof { BytesList = 1; FloatList = 2; Int64List = 3; } }
/// Packed and unpacked numeric lists are both accepted; unknown fields are
/// skipped. Throws MalformedProto with the record's offset.
FeatureMap decode_example(const RawRecord& record);
FeatureMap decode_example(std::span<const std::uint8_t> payload, std::uint64_t offset = 0);

/// Encodes with packed numeric lists and keys in map order. Float values are
/// narrowed to 32 bits, the wire width of the float list.
Bytes encode_example(const FeatureMap& features);

}  // namespace trajbench::ingest
