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
#include <utility>
#include <vector>

#include "trajbench/ingest/episode.hpp"
#include "trajbench/ingest/key_mapping.hpp"

namespace trajbench::adapter {

using ingest::Image;

/// Expands to RGBA-style 4 channels: 3 -> (c0, c1, c2, c0); 2 -> (c0, c1,
/// c0, c1); 1 -> (c0, c0, c0, c0); 4 -> unchanged. Throws UnsupportedChannels.
Image to_four_channel(const Image& img);

enum class ImagePolicy { kPrimaryOnly, kAllViews };

std::string to_string(ImagePolicy p);
ImagePolicy image_policy_from_string(const std::string& s);

using NamedImage = std::pair<std::string, Image>;

/// Images of the step by mapped view name. kPrimaryOnly returns the primary
/// view alone; kAllViews every present view in declared order. Throws
/// NoImageAvailable when nothing qualifies.
std::vector<NamedImage> select_images(const ingest::StepRecord& step, ImagePolicy policy,
                                      const ingest::KeyMapping& mapping);

}  // namespace trajbench::adapter
