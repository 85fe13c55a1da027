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

#include "trajbench/adapter/image_prep.hpp"

#include "trajbench/error.hpp"

namespace trajbench::adapter {

Image to_four_channel(const Image& img) {
  static constexpr int kSource[5][4] = {
      {0, 0, 0, 0},  // unused
      {0, 0, 0, 0},
      {0, 1, 0, 1},
      {0, 1, 2, 0},
      {0, 1, 2, 3},
  };
  if (img.channels < 1 || img.channels > 4) throw UnsupportedChannels(img.channels);
  if (img.channels == 4) return img;
  if (!img.valid()) throw Error("to_four_channel: image data does not match its geometry");
  const std::size_t pixels = static_cast<std::size_t>(img.width) * img.height;
  Image out{img.width, img.height, 4, Bytes(pixels * 4)};
  const auto& map = kSource[img.channels];
  for (std::size_t p = 0; p < pixels; ++p)
    for (int c = 0; c < 4; ++c) out.data[p * 4 + c] = img.data[p * img.channels + map[c]];
  return out;
}

std::string to_string(ImagePolicy p) {
  return p == ImagePolicy::kAllViews ? "all_views" : "primary_only";
}

ImagePolicy image_policy_from_string(const std::string& s) {
  if (s == "primary_only") return ImagePolicy::kPrimaryOnly;
  if (s == "all_views") return ImagePolicy::kAllViews;
  throw Error("unknown image policy '" + s + "' (expected primary_only or all_views)");
}

std::vector<NamedImage> select_images(const ingest::StepRecord& step, ImagePolicy policy,
                                      const ingest::KeyMapping& mapping) {
  auto image_at = [&](const std::string& view) -> const Image* {
    auto it = step.observation.find(view);
    if (it == step.observation.end()) return nullptr;
    return std::get_if<Image>(&it->second);
  };
  std::vector<NamedImage> out;
  if (policy == ImagePolicy::kPrimaryOnly) {
    if (auto primary = mapping.primary())
      if (const Image* img = image_at(*primary)) out.emplace_back(*primary, *img);
  } else {
    for (const auto& view : mapping.image_views())
      if (const Image* img = image_at(view)) out.emplace_back(view, *img);
  }
  if (out.empty()) throw NoImageAvailable();
  return out;
}

}  // namespace trajbench::adapter
