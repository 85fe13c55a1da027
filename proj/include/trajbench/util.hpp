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
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trajbench {

using Bytes = std::vector<std::uint8_t>;

std::string base64_encode(std::span<const std::uint8_t> data);
/// Throws trajbench::Error on characters outside the standard alphabet or bad padding.
Bytes base64_decode(std::string_view text);

/// 64-bit FNV-1a, streamable: pass the previous result as `state` to continue.
constexpr std::uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ULL;
std::uint64_t fnv1a64(std::span<const std::uint8_t> data, std::uint64_t state = kFnvOffsetBasis);
std::uint64_t fnv1a64(std::string_view data, std::uint64_t state = kFnvOffsetBasis);

std::string hex64(std::uint64_t value);

/// Pairwise (cascade) summation over a fixed element order. Results depend
/// only on the values and their order, never on scheduling.
double pairwise_sum(std::span<const double> values);
double pairwise_mean(std::span<const double> values);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace trajbench
