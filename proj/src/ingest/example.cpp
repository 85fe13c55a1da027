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

#include "trajbench/ingest/example.hpp"

#include <bit>
#include <cstring>
#include <optional>

#include "trajbench/error.hpp"

namespace trajbench::ingest {
namespace {

enum WireType : std::uint32_t {
  kVarint = 0,
  kFixed64 = 1,
  kLengthDelimited = 2,
  kFixed32 = 5,
};

/// Cursor over one (sub)message. Any violation throws MalformedProto tagged
/// with the enclosing record offset.
class WireReader {
 public:
  WireReader(std::span<const std::uint8_t> data, std::uint64_t offset)
      : data_(data), record_offset_(offset) {}

  bool done() const { return pos_ >= data_.size(); }

  std::uint64_t varint() {
    std::uint64_t value = 0;
    for (int shift = 0; shift < 64; shift += 7) {
      if (done()) fail("truncated varint");
      std::uint8_t b = data_[pos_++];
      if (shift == 63 && (b & 0x7e)) fail("varint overflows 64 bits");
      value |= std::uint64_t{b & 0x7fu} << shift;
      if (!(b & 0x80)) return value;
    }
    fail("varint longer than 10 bytes");
  }

  std::pair<std::uint32_t, WireType> tag() {
    std::uint64_t t = varint();
    auto field = static_cast<std::uint32_t>(t >> 3);
    if (field == 0 || t >> 3 > 0x1fffffff) fail("invalid field number");
    auto wire = static_cast<std::uint32_t>(t & 7);
    if (wire != kVarint && wire != kFixed64 && wire != kLengthDelimited && wire != kFixed32)
      fail("unsupported wire type " + std::to_string(wire));
    return {field, static_cast<WireType>(wire)};
  }

  std::span<const std::uint8_t> bytes() {
    std::uint64_t n = varint();
    if (n > data_.size() - pos_) fail("length-delimited field overruns message");
    auto out = data_.subspan(pos_, static_cast<std::size_t>(n));
    pos_ += static_cast<std::size_t>(n);
    return out;
  }

  std::uint32_t fixed32() {
    if (data_.size() - pos_ < 4) fail("truncated fixed32");
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | data_[pos_ + i];
    pos_ += 4;
    return v;
  }

  void skip(WireType wire) {
    switch (wire) {
      case kVarint: varint(); break;
      case kFixed64:
        if (data_.size() - pos_ < 8) fail("truncated fixed64");
        pos_ += 8;
        break;
      case kLengthDelimited: bytes(); break;
      case kFixed32: fixed32(); break;
    }
  }

  WireReader sub(std::span<const std::uint8_t> data) const { return {data, record_offset_}; }

  [[noreturn]] void fail(const std::string& detail) const {
    throw MalformedProto(record_offset_, detail);
  }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
  std::uint64_t record_offset_;
};

void expect_wire(const WireReader& r, WireType got, WireType want, const char* what) {
  if (got != want) r.fail(std::string("unexpected wire type for ") + what);
}

BytesList decode_bytes_list(WireReader r) {
  BytesList out;
  while (!r.done()) {
    auto [field, wire] = r.tag();
    if (field == 1) {
      expect_wire(r, wire, kLengthDelimited, "bytes value");
      auto b = r.bytes();
      out.emplace_back(reinterpret_cast<const char*>(b.data()), b.size());
    } else {
      r.skip(wire);
    }
  }
  return out;
}

FloatList decode_float_list(WireReader r) {
  FloatList out;
  while (!r.done()) {
    auto [field, wire] = r.tag();
    if (field != 1) {
      r.skip(wire);
      continue;
    }
    if (wire == kLengthDelimited) {
      auto packed = r.bytes();
      if (packed.size() % 4 != 0) r.fail("packed float list length not a multiple of 4");
      WireReader p = r.sub(packed);
      while (!p.done()) out.push_back(std::bit_cast<float>(p.fixed32()));
    } else {
      expect_wire(r, wire, kFixed32, "float value");
      out.push_back(std::bit_cast<float>(r.fixed32()));
    }
  }
  return out;
}

Int64List decode_int64_list(WireReader r) {
  Int64List out;
  while (!r.done()) {
    auto [field, wire] = r.tag();
    if (field != 1) {
      r.skip(wire);
      continue;
    }
    if (wire == kLengthDelimited) {
      WireReader p = r.sub(r.bytes());
      while (!p.done()) out.push_back(static_cast<std::int64_t>(p.varint()));
    } else {
      expect_wire(r, wire, kVarint, "int64 value");
      out.push_back(static_cast<std::int64_t>(r.varint()));
    }
  }
  return out;
}

FeatureList decode_feature(WireReader r) {
  std::optional<FeatureList> kind;
  std::uint32_t kind_field = 0;
  while (!r.done()) {
    auto [field, wire] = r.tag();
    if (field < 1 || field > 3) {
      r.skip(wire);
      continue;
    }
    expect_wire(r, wire, kLengthDelimited, "feature list");
    if (kind && kind_field != field) r.fail("feature carries more than one list kind");
    WireReader list = r.sub(r.bytes());
    // Repeated occurrences of the same oneof member merge, as protobuf does.
    switch (field) {
      case 1: {
        auto v = decode_bytes_list(list);
        if (!kind) kind = BytesList{};
        auto& dst = std::get<BytesList>(*kind);
        dst.insert(dst.end(), v.begin(), v.end());
        break;
      }
      case 2: {
        auto v = decode_float_list(list);
        if (!kind) kind = FloatList{};
        auto& dst = std::get<FloatList>(*kind);
        dst.insert(dst.end(), v.begin(), v.end());
        break;
      }
      case 3: {
        auto v = decode_int64_list(list);
        if (!kind) kind = Int64List{};
        auto& dst = std::get<Int64List>(*kind);
        dst.insert(dst.end(), v.begin(), v.end());
        break;
      }
    }
    kind_field = field;
  }
  if (!kind) r.fail("feature carries no list kind");
  return std::move(*kind);
}

void decode_features(WireReader r, FeatureMap& out) {
  while (!r.done()) {
    auto [field, wire] = r.tag();
    if (field != 1) {
      r.skip(wire);
      continue;
    }
    expect_wire(r, wire, kLengthDelimited, "feature map entry");
    WireReader entry = r.sub(r.bytes());
    std::string key;
    std::optional<FeatureList> value;
    while (!entry.done()) {
      auto [ef, ew] = entry.tag();
      if (ef == 1) {
        expect_wire(entry, ew, kLengthDelimited, "map key");
        auto k = entry.bytes();
        key.assign(reinterpret_cast<const char*>(k.data()), k.size());
      } else if (ef == 2) {
        expect_wire(entry, ew, kLengthDelimited, "map value");
        value = decode_feature(entry.sub(entry.bytes()));
      } else {
        entry.skip(ew);
      }
    }
    if (!value) entry.fail("feature '" + key + "' has no value");
    out.insert_or_assign(std::move(key), std::move(*value));
  }
}

// ---- encoding ----

void put_varint(Bytes& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(v | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_tag(Bytes& out, std::uint32_t field, WireType wire) {
  put_varint(out, (std::uint64_t{field} << 3) | wire);
}

void put_length_delimited(Bytes& out, std::uint32_t field, std::span<const std::uint8_t> body) {
  put_tag(out, field, kLengthDelimited);
  put_varint(out, body.size());
  out.insert(out.end(), body.begin(), body.end());
}

Bytes encode_list(const FeatureList& list) {
  Bytes inner;
  std::uint32_t kind_field = 0;
  if (const auto* b = std::get_if<BytesList>(&list)) {
    kind_field = 1;
    for (const auto& s : *b)
      put_length_delimited(inner, 1,
                           std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
  } else if (const auto* f = std::get_if<FloatList>(&list)) {
    kind_field = 2;
    if (!f->empty()) {
      Bytes packed;
      for (double d : *f) {
        auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(d));
        for (int i = 0; i < 4; ++i) packed.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
      }
      put_length_delimited(inner, 1, packed);
    }
  } else {
    kind_field = 3;
    const auto& ints = std::get<Int64List>(list);
    if (!ints.empty()) {
      Bytes packed;
      for (std::int64_t v : ints) put_varint(packed, static_cast<std::uint64_t>(v));
      put_length_delimited(inner, 1, packed);
    }
  }
  Bytes feature;
  put_length_delimited(feature, kind_field, inner);
  return feature;
}

}  // namespace

FeatureMap decode_example(std::span<const std::uint8_t> payload, std::uint64_t offset) {
  FeatureMap out;
  WireReader r(payload, offset);
  while (!r.done()) {
    auto [field, wire] = r.tag();
    if (field == 1) {
      expect_wire(r, wire, kLengthDelimited, "features");
      decode_features(r.sub(r.bytes()), out);
    } else {
      r.skip(wire);
    }
  }
  return out;
}

FeatureMap decode_example(const RawRecord& record) {
  return decode_example(record.payload, record.offset);
}

Bytes encode_example(const FeatureMap& features) {
  Bytes feature_block;
  for (const auto& [key, list] : features) {
    Bytes entry;
    put_length_delimited(entry, 1,
                         std::span(reinterpret_cast<const std::uint8_t*>(key.data()), key.size()));
    put_length_delimited(entry, 2, encode_list(list));
    put_length_delimited(feature_block, 1, entry);
  }
  Bytes out;
  if (!features.empty()) put_length_delimited(out, 1, feature_block);
  return out;
}

}  // namespace trajbench::ingest
