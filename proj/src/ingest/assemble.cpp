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

#include "trajbench/ingest/assemble.hpp"

#include <fstream>
#include <set>

#include "trajbench/error.hpp"

namespace trajbench::ingest {
namespace {

const FeatureList* find(const FeatureMap& m, const std::string& key) {
  auto it = m.find(key);
  return it == m.end() ? nullptr : &it->second;
}

/// Float or int64 features as doubles; nullopt for bytes features.
std::optional<FloatVector> as_floats(const FeatureList& list) {
  if (const auto* f = std::get_if<FloatList>(&list)) return *f;
  if (const auto* i = std::get_if<Int64List>(&list)) return FloatVector(i->begin(), i->end());
  return std::nullopt;
}

FloatVector require_floats(const FeatureList& list, const std::string& key) {
  auto v = as_floats(list);
  if (!v) throw Error("feature '" + key + "' is a bytes list, expected numbers");
  return std::move(*v);
}

const BytesList& require_bytes(const FeatureList& list, const std::string& key) {
  const auto* b = std::get_if<BytesList>(&list);
  if (!b) throw Error("feature '" + key + "' is numeric, expected bytes");
  return *b;
}

bool flag_set(const FeatureMap& m, const std::string& key) {
  const auto* f = find(m, key);
  if (!f) return false;
  if (const auto* i = std::get_if<Int64List>(f)) return !i->empty() && i->front() != 0;
  if (const auto* d = std::get_if<FloatList>(f)) return !d->empty() && d->front() != 0.0;
  return false;
}

std::optional<Image> decode_image(const std::string& bytes, const ImageKey& spec,
                                  ImageEncoding encoding, std::size_t step_index) {
  if (bytes.empty()) return std::nullopt;
  try {
    if (encoding == ImageEncoding::kRaw) {
      if (spec.width <= 0 || spec.height <= 0 || spec.channels <= 0)
        throw Error("raw image key has no declared geometry");
      return image_from_raw(Bytes(bytes.begin(), bytes.end()), spec.width, spec.height,
                            spec.channels);
    }
    Image img = decode_png(
        std::span(reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()));
    if ((spec.width && spec.width != img.width) || (spec.height && spec.height != img.height) ||
        (spec.channels && spec.channels != img.channels))
      throw Error("decoded geometry differs from the declared geometry");
    return img;
  } catch (const ImageDecodeError&) {
    throw;
  } catch (const std::exception& e) {
    throw ImageDecodeError(spec.key, step_index, e.what());
  }
}

std::string text_of(const BytesList& b) { return b.empty() ? std::string() : b.front(); }

StepRecord step_from_record(const FeatureMap& m, const KeyMapping& mapping,
                            std::size_t step_index, std::optional<std::string>& instruction) {
  StepRecord step;
  for (const auto& key : mapping.action_keys) {
    const auto* f = find(m, key);
    if (!f) throw MissingRequiredKey(key);
    step.action.emplace(key, require_floats(*f, key));
  }
  for (const auto& key : mapping.observation_keys)
    if (const auto* f = find(m, key)) step.observation.emplace(key, require_floats(*f, key));
  for (const auto& key : mapping.text_keys)
    if (const auto* f = find(m, key)) {
      const auto& b = require_bytes(*f, key);
      if (!b.empty()) step.observation.emplace(key, b.front());
    }
  for (const auto& spec : mapping.image_keys)
    if (const auto* f = find(m, spec.key)) {
      const auto& b = require_bytes(*f, spec.key);
      if (b.size() > 1) throw ImageDecodeError(spec.key, step_index, "more than one image");
      if (auto img = decode_image(text_of(b), spec, mapping.image_encoding, step_index))
        step.observation.emplace(spec.view, std::move(*img));
    }
  if (mapping.instruction_key && !instruction)
    if (const auto* f = find(m, *mapping.instruction_key)) {
      const auto& b = require_bytes(*f, *mapping.instruction_key);
      if (!b.empty() && !b.front().empty()) instruction = b.front();
    }
  step.is_terminal = flag_set(m, mapping.is_terminal_key);
  return step;
}

std::string episode_id_feature(const FeatureMap& m, const std::string& key) {
  const auto* f = find(m, key);
  if (!f) return {};
  if (const auto* b = std::get_if<BytesList>(f)) return text_of(*b);
  if (const auto* i = std::get_if<Int64List>(f); i && !i->empty()) return std::to_string(i->front());
  return {};
}

/// Per-episode layout: slice concatenated step features into steps.
EpisodeRecord assemble_packed(const FeatureMap& m, const KeyMapping& mapping,
                              const std::string& fallback_id) {
  const std::string& p = mapping.step_prefix;
  const auto* len = find(m, mapping.step_count_key);
  if (!len) throw MissingRequiredKey(mapping.step_count_key);
  const auto* lens = std::get_if<Int64List>(len);
  if (!lens || lens->size() != 1 || lens->front() < 1)
    throw Error("'" + mapping.step_count_key + "' must hold one positive integer");
  const auto n = static_cast<std::size_t>(lens->front());

  auto chunked = [&](const std::string& key) -> std::optional<std::vector<FloatVector>> {
    const auto* f = find(m, p + key);
    if (!f) return std::nullopt;
    FloatVector all = require_floats(*f, p + key);
    if (all.size() % n != 0)
      throw Error("feature '" + p + key + "' length " + std::to_string(all.size()) +
                  " is not divisible by step count " + std::to_string(n));
    std::size_t w = all.size() / n;
    std::vector<FloatVector> out(n);
    for (std::size_t i = 0; i < n; ++i)
      out[i].assign(all.begin() + static_cast<std::ptrdiff_t>(i * w),
                    all.begin() + static_cast<std::ptrdiff_t>((i + 1) * w));
    return out;
  };
  auto per_step_bytes = [&](const std::string& key) -> const BytesList* {
    const auto* f = find(m, p + key);
    if (!f) return nullptr;
    const auto& b = require_bytes(*f, p + key);
    if (b.size() != n && b.size() != 1)
      throw Error("feature '" + p + key + "' has " + std::to_string(b.size()) +
                  " entries for " + std::to_string(n) + " steps");
    return &b;
  };

  EpisodeRecord ep;
  ep.steps.resize(n);
  for (const auto& key : mapping.action_keys) {
    auto c = chunked(key);
    if (!c) throw MissingRequiredKey(p + key);
    for (std::size_t i = 0; i < n; ++i) ep.steps[i].action.emplace(key, std::move((*c)[i]));
  }
  for (const auto& key : mapping.observation_keys)
    if (auto c = chunked(key))
      for (std::size_t i = 0; i < n; ++i) ep.steps[i].observation.emplace(key, std::move((*c)[i]));
  for (const auto& key : mapping.text_keys)
    if (const auto* b = per_step_bytes(key))
      for (std::size_t i = 0; i < n; ++i) {
        const auto& s = (*b)[b->size() == 1 ? 0 : i];
        if (!s.empty()) ep.steps[i].observation.emplace(key, s);
      }
  for (const auto& spec : mapping.image_keys)
    if (const auto* b = per_step_bytes(spec.key))
      for (std::size_t i = 0; i < n; ++i)
        if (auto img = decode_image((*b)[b->size() == 1 ? 0 : i], spec, mapping.image_encoding, i))
          ep.steps[i].observation.emplace(spec.view, std::move(*img));
  if (mapping.instruction_key) {
    const BytesList* b = per_step_bytes(*mapping.instruction_key);
    if (!b)
      if (const auto* f = find(m, *mapping.instruction_key))
        b = &require_bytes(*f, *mapping.instruction_key);
    if (b)
      for (const auto& s : *b)
        if (!s.empty()) {
          ep.instruction = s;
          break;
        }
  }
  if (const auto* f = find(m, p + mapping.is_terminal_key)) {
    auto flags = require_floats(*f, p + mapping.is_terminal_key);
    if (flags.size() != n) throw Error("terminal flags do not match the step count");
    for (std::size_t i = 0; i < n; ++i) ep.steps[i].is_terminal = flags[i] != 0.0;
  }
  ep.episode_id = episode_id_feature(m, mapping.episode_id_key);
  if (ep.episode_id.empty()) ep.episode_id = fallback_id;
  return ep;
}

}  // namespace

EpisodeRecord assemble_episode(std::span<const FeatureMap> features, const KeyMapping& mapping,
                               const std::string& fallback_id) {
  if (features.empty()) throw Error("cannot assemble an episode from zero records");
  EpisodeRecord ep;
  if (mapping.layout == RecordLayout::kPerEpisode) {
    if (features.size() != 1)
      throw Error("per-episode layout expects one record per episode, got " +
                  std::to_string(features.size()));
    ep = assemble_packed(features.front(), mapping, fallback_id);
  } else {
    for (std::size_t i = 0; i < features.size(); ++i)
      ep.steps.push_back(step_from_record(features[i], mapping, i, ep.instruction));
    ep.episode_id = episode_id_feature(features.front(), mapping.episode_id_key);
    if (ep.episode_id.empty()) ep.episode_id = fallback_id;
  }
  validate_episode(ep);
  return ep;
}

TfRecordEpisodeReader::TfRecordEpisodeReader(std::istream& in, KeyMapping mapping,
                                             std::string id_prefix)
    : records_(in), mapping_(std::move(mapping)), id_prefix_(std::move(id_prefix)) {}

std::string TfRecordEpisodeReader::episode_id_of(const FeatureMap& m) const {
  return episode_id_feature(m, mapping_.episode_id_key);
}

std::string TfRecordEpisodeReader::next_fallback_id() {
  return id_prefix_ + "-" + std::to_string(episodes_emitted_);
}

std::optional<EpisodeRecord> TfRecordEpisodeReader::next() {
  auto read_map = [&]() -> std::optional<FeatureMap> {
    auto rec = records_.next();
    if (!rec) return std::nullopt;
    return decode_example(*rec);
  };

  if (mapping_.layout == RecordLayout::kPerEpisode) {
    auto m = read_map();
    if (!m) return std::nullopt;
    auto ep = assemble_episode(std::span(&*m, 1), mapping_, next_fallback_id());
    ++episodes_emitted_;
    return ep;
  }

  std::vector<FeatureMap> group;
  if (pending_) {
    group.push_back(std::move(*pending_));
    pending_.reset();
  }
  while (group.empty() || !flag_set(group.back(), mapping_.is_last_key)) {
    auto m = read_map();
    if (!m) break;
    if (!group.empty() && episode_id_of(*m) != episode_id_of(group.front())) {
      pending_ = std::move(*m);
      break;
    }
    group.push_back(std::move(*m));
  }
  if (group.empty()) return std::nullopt;
  auto ep = assemble_episode(group, mapping_, next_fallback_id());
  ++episodes_emitted_;
  return ep;
}

std::vector<EpisodeRecord> load_tfrecord_episodes(const std::string& path,
                                                  const KeyMapping& mapping,
                                                  const std::string& id_prefix) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  TfRecordEpisodeReader reader(in, mapping, id_prefix);
  std::vector<EpisodeRecord> out;
  std::set<std::string> seen;
  while (auto ep = reader.next()) {
    if (!seen.insert(ep->episode_id).second)
      throw Error("duplicate episode id '" + ep->episode_id + "' in '" + path + "'");
    out.push_back(std::move(*ep));
  }
  return out;
}

namespace {

std::string encode_image_bytes(const Image& img, ImageEncoding encoding) {
  if (encoding == ImageEncoding::kRaw) return std::string(img.data.begin(), img.data.end());
  Bytes png = encode_png(img);
  return std::string(png.begin(), png.end());
}

const std::string* image_key_for_view(const KeyMapping& mapping, const std::string& view) {
  for (const auto& k : mapping.image_keys)
    if (k.view == view) return &k.key;
  return nullptr;
}

}  // namespace

void write_tfrecord_episodes(std::ostream& out, std::span<const EpisodeRecord> episodes,
                             const KeyMapping& mapping) {
  TfRecordWriter writer(out);
  for (const auto& ep : episodes) {
    if (mapping.layout == RecordLayout::kPerStep) {
      for (std::size_t i = 0; i < ep.steps.size(); ++i) {
        const auto& step = ep.steps[i];
        FeatureMap m;
        for (const auto& [k, v] : step.action) m[k] = FloatList(v);
        for (const auto& [k, v] : step.observation) {
          if (const auto* f = std::get_if<FloatVector>(&v)) {
            m[k] = FloatList(*f);
          } else if (const auto* s = std::get_if<std::string>(&v)) {
            m[k] = BytesList{*s};
          } else if (const auto* key = image_key_for_view(mapping, k)) {
            m[*key] = BytesList{encode_image_bytes(std::get<Image>(v), mapping.image_encoding)};
          }
        }
        if (mapping.instruction_key && ep.instruction)
          m[*mapping.instruction_key] = BytesList{*ep.instruction};
        m[mapping.episode_id_key] = BytesList{ep.episode_id};
        m[mapping.is_last_key] = Int64List{i + 1 == ep.steps.size() ? 1 : 0};
        m[mapping.is_terminal_key] = Int64List{step.is_terminal ? 1 : 0};
        writer.write(encode_example(m));
      }
      continue;
    }

    const std::string& p = mapping.step_prefix;
    FeatureMap m;
    m[mapping.step_count_key] = Int64List{static_cast<std::int64_t>(ep.steps.size())};
    m[mapping.episode_id_key] = BytesList{ep.episode_id};
    Int64List terminal;
    for (const auto& step : ep.steps) {
      for (const auto& [k, v] : step.action) {
        auto& dst = m.try_emplace(p + k, FloatList{}).first->second;
        auto& list = std::get<FloatList>(dst);
        list.insert(list.end(), v.begin(), v.end());
      }
      for (const auto& [k, v] : step.observation) {
        if (const auto* f = std::get_if<FloatVector>(&v)) {
          auto& list = std::get<FloatList>(m.try_emplace(p + k, FloatList{}).first->second);
          list.insert(list.end(), f->begin(), f->end());
        } else if (const auto* s = std::get_if<std::string>(&v)) {
          std::get<BytesList>(m.try_emplace(p + k, BytesList{}).first->second).push_back(*s);
        } else if (const auto* key = image_key_for_view(mapping, k)) {
          std::get<BytesList>(m.try_emplace(p + *key, BytesList{}).first->second)
              .push_back(encode_image_bytes(std::get<Image>(v), mapping.image_encoding));
        }
      }
      terminal.push_back(step.is_terminal ? 1 : 0);
    }
    m[p + mapping.is_terminal_key] = terminal;
    if (mapping.instruction_key && ep.instruction)
      m[p + *mapping.instruction_key] = BytesList(ep.steps.size(), *ep.instruction);
    writer.write(encode_example(m));
  }
}

}  // namespace trajbench::ingest
