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

#include "trajbench/util.hpp"

namespace trajbench::ingest {

/// Row-major, channel-interleaved 8-bit image.
struct Image {
  int width = 0;
  int height = 0;
  int channels = 0;
  Bytes data;

  std::size_t expected_size() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
           static_cast<std::size_t>(channels);
  }
  bool valid() const {
    return width > 0 && height > 0 && channels >= 1 && channels <= 4 &&
           data.size() == expected_size();
  }

  friend bool operator==(const Image&, const Image&) = default;
};

enum class ImageEncoding { kRaw, kPng };

std::string to_string(ImageEncoding e);
ImageEncoding image_encoding_from_string(const std::string& s);

/// Throws trajbench::Error with a reason on malformed input. Output is
/// always 8-bit; 16-bit PNGs are reduced and palettes expanded.
Image decode_png(std::span<const std::uint8_t> png);
Bytes encode_png(const Image& image);

/// Wraps raw bytes with declared geometry; throws if the sizes disagree.
Image image_from_raw(Bytes data, int width, int height, int channels);

}  // namespace trajbench::ingest
