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

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trajbench/ingest/episode.hpp"
#include "trajbench/ingest/example.hpp"
#include "trajbench/ingest/key_mapping.hpp"
#include "trajbench/ingest/tfrecord.hpp"

namespace trajbench::ingest {

/// Builds one episode from its decoded records. For kPerStep each map is one
/// step; for kPerEpisode exactly one map is expected. `fallback_id` is used
/// when the records carry no episode id feature.
///
/// Missing optional features (observations, images, text, instruction) are
/// left absent. Throws MissingRequiredKey for an absent action key and
/// ImageDecodeError for undecodable image bytes.
EpisodeRecord assemble_episode(std::span<const FeatureMap> features, const KeyMapping& mapping,
                               const std::string& fallback_id);

/// Streams episodes out of a TFRecord source, holding at most one episode's
/// records in memory.
class TfRecordEpisodeReader {
 public:
  TfRecordEpisodeReader(std::istream& in, KeyMapping mapping, std::string id_prefix);

  std::optional<EpisodeRecord> next();

 private:
  std::string episode_id_of(const FeatureMap& m) const;
  std::string next_fallback_id();

  TfRecordReader records_;
  KeyMapping mapping_;
  std::string id_prefix_;
  std::size_t episodes_emitted_ = 0;
  std::optional<FeatureMap> pending_;
};

/// Reads every episode from a TFRecord file; episode ids must be unique.
std::vector<EpisodeRecord> load_tfrecord_episodes(const std::string& path,
                                                  const KeyMapping& mapping,
                                                  const std::string& id_prefix);

/// Encodes episodes as records following `mapping`; used to produce
/// fixtures. Images are written with the mapping's encoding.
void write_tfrecord_episodes(std::ostream& out, std::span<const EpisodeRecord> episodes,
                             const KeyMapping& mapping);

}  // namespace trajbench::ingest
