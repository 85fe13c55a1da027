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

// Writes the synthetic stand-in episodes for every dataset of a registry.
// Values are multiples of small powers of two, so they survive the float32
// TFRecord encoding bit for bit.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "trajbench/adapter/rng.hpp"
#include "trajbench/error.hpp"
#include "trajbench/ingest/assemble.hpp"
#include "trajbench/ingest/jsonl.hpp"
#include "trajbench/registry/registry.hpp"
#include "trajbench/util.hpp"

namespace {

using namespace trajbench;
using action::DimKind;
using action::GripperMode;

struct Shape {
  std::size_t episodes = 20;
  std::size_t min_steps = 3;
  std::size_t max_steps = 9;
};

double grid(adapter::Xoshiro256StarStar& rng, int lo, int hi, double unit) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return static_cast<double>(lo + static_cast<int>(rng() % span)) * unit;
}

double action_value(const registry::DatasetDescriptor& d, const action::DimSpec& dim,
                    bool last_step, adapter::Xoshiro256StarStar& rng) {
  switch (dim.kind) {
    case DimKind::kTerminal:
      return last_step ? 1.0 : 0.0;
    case DimKind::kGripper:
      switch (d.conversions.gripper_mode) {
        case GripperMode::kTernary: return grid(rng, -1, 1, 1.0);
        case GripperMode::kContinuous: return grid(rng, -64, 64, 1.0 / 64);
        default: return grid(rng, 0, 1, 1.0);
      }
    case DimKind::kTorque:
      return grid(rng, -32, 96, 1.0 / 32);
    default:
      return grid(rng, -256, 256, 1.0 / 256);
  }
}

ingest::EpisodeRecord make_episode(const registry::DatasetDescriptor& d, std::size_t index,
                                   const Shape& shape, adapter::Xoshiro256StarStar& rng) {
  static const char* kVerbs[] = {"pick up", "push", "open", "place", "wipe"};
  static const char* kObjects[] = {"the red block", "the drawer", "the cup", "the cloth"};
  char id[32];
  std::snprintf(id, sizeof id, "ep-%04zu", index);
  ingest::EpisodeRecord ep;
  ep.episode_id = id;
  if (d.key_mapping.instruction_key)
    ep.instruction = std::string(kVerbs[rng() % 5]) + " " + kObjects[rng() % 4];

  const auto& dims = d.action_space.dims();
  const std::size_t steps =
      shape.min_steps + static_cast<std::size_t>(rng() % (shape.max_steps - shape.min_steps + 1));
  for (std::size_t s = 0; s < steps; ++s) {
    const bool last = s + 1 == steps;
    ingest::StepRecord step;
    std::vector<double> act;
    for (const auto& dim : dims) act.push_back(action_value(d, dim, last, rng));

    const auto& keys = d.key_mapping.action_keys;
    if (keys.size() == 1) {
      step.action[keys.front()] = act;
    } else {
      // One key per signature group, in signature order.
      auto sig = action::parse_signature(d.action_signature);
      std::size_t at = 0;
      for (std::size_t g = 0; g < sig.groups.size(); ++g) {
        const auto n = static_cast<std::size_t>(sig.groups[g].count);
        step.action[keys.at(g)] = std::vector<double>(act.begin() + at, act.begin() + at + n);
        at += n;
      }
    }
    for (const auto& key : d.key_mapping.observation_keys) {
      std::vector<double> state(7);
      for (auto& v : state) v = grid(rng, -128, 128, 1.0 / 128);
      step.observation[key] = state;
    }
    for (const auto& ik : d.key_mapping.image_keys) {
      ingest::Image img{ik.width, ik.height, ik.channels, {}};
      img.data.resize(img.expected_size());
      for (auto& b : img.data) b = static_cast<std::uint8_t>(rng() & 0xff);
      step.observation[ik.view] = img;
    }
    step.is_terminal = last;
    ep.steps.push_back(std::move(step));
  }
  return ep;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: make_fixtures <registry.json> <out_dir>\n";
    return 2;
  }
  try {
    const auto reg = registry::load_registry(argv[1]);
    const std::filesystem::path out = argv[2];
    std::filesystem::create_directories(out);
    std::size_t plain = 0;
    for (const auto& d : reg.datasets()) {
      Shape shape;
      if (d.has_predefined_eval_split) shape.episodes = 3;
      adapter::Xoshiro256StarStar rng(fnv1a64(d.registered_name));
      std::vector<ingest::EpisodeRecord> episodes;
      for (std::size_t i = 0; i < shape.episodes; ++i)
        episodes.push_back(make_episode(d, i, shape, rng));

      // Alternate formats so both ingestion paths are exercised.
      const bool plain_layout = d.key_mapping.layout == ingest::RecordLayout::kPerStep &&
                                d.key_mapping.image_encoding == ingest::ImageEncoding::kRaw &&
                                std::ranges::all_of(d.key_mapping.image_keys,
                                                    [](const auto& k) { return k.key == k.view; });
      const bool jsonl = plain_layout && plain++ % 3 != 2;
      const auto path = out / (d.registered_name + (jsonl ? ".jsonl" : ".tfrecord"));
      std::ofstream f(path, std::ios::binary | std::ios::trunc);
      if (jsonl)
        for (const auto& e : episodes) f << ingest::episode_to_jsonl(e) << "\n";
      else
        ingest::write_tfrecord_episodes(f, episodes, d.key_mapping);
      if (!f) throw Error("write failed for " + path.string());
      std::cerr << path.string() << ": " << episodes.size() << " episodes\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
