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

#include "trajbench/ingest/tfrecord.hpp"

#include <algorithm>
#include <array>

#include "trajbench/error.hpp"
#include "trajbench/ingest/crc32c.hpp"

namespace trajbench::ingest {
namespace {

std::uint64_t load_u64le(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

std::uint32_t load_u32le(const std::uint8_t* p) {
  return std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) | (std::uint32_t{p[2]} << 16) |
         (std::uint32_t{p[3]} << 24);
}

void store_u64le(std::uint8_t* p, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

void store_u32le(std::uint8_t* p, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

}  // namespace

bool TfRecordReader::read_exact(std::uint8_t* dst, std::size_t n) {
  in_.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(n));
  auto got = static_cast<std::size_t>(in_.gcount());
  position_ += got;
  return got == n;
}

std::optional<RawRecord> TfRecordReader::next() {
  const std::uint64_t start = position_;
  std::array<std::uint8_t, 12> header{};

  in_.read(reinterpret_cast<char*>(header.data()), 12);
  auto got = static_cast<std::size_t>(in_.gcount());
  position_ += got;
  if (got == 0) return std::nullopt;
  if (got < 12) throw TruncatedRecord(start);

  if (masked_crc32c(std::span(header.data(), 8)) != load_u32le(header.data() + 8))
    throw ChecksumMismatch(start, "length");
  const std::uint64_t length = load_u64le(header.data());

  RawRecord record;
  record.offset = start;
  // Grow in bounded chunks so a stream shorter than its declared length fails
  // as truncated instead of reserving the full declared size up front.
  constexpr std::uint64_t kChunk = 1 << 20;
  std::uint64_t remaining = length;
  while (remaining > 0) {
    auto step = static_cast<std::size_t>(std::min(remaining, kChunk));
    std::size_t old = record.payload.size();
    record.payload.resize(old + step);
    if (!read_exact(record.payload.data() + old, step)) throw TruncatedRecord(start);
    remaining -= step;
  }

  std::array<std::uint8_t, 4> footer{};
  if (!read_exact(footer.data(), 4)) throw TruncatedRecord(start);
  if (masked_crc32c(record.payload) != load_u32le(footer.data()))
    throw ChecksumMismatch(start, "data");

  ++records_read_;
  return record;
}

std::vector<RawRecord> parse_tfrecord_stream(std::istream& in) {
  TfRecordReader reader(in);
  std::vector<RawRecord> out;
  while (auto r = reader.next()) out.push_back(std::move(*r));
  return out;
}

void TfRecordWriter::write(std::span<const std::uint8_t> payload) {
  std::array<std::uint8_t, 12> header{};
  store_u64le(header.data(), payload.size());
  store_u32le(header.data() + 8, masked_crc32c(std::span(header.data(), 8)));
  std::array<std::uint8_t, 4> footer{};
  store_u32le(footer.data(), masked_crc32c(payload));
  out_.write(reinterpret_cast<const char*>(header.data()), 12);
  out_.write(reinterpret_cast<const char*>(payload.data()),
             static_cast<std::streamsize>(payload.size()));
  out_.write(reinterpret_cast<const char*>(footer.data()), 4);
  if (!out_) throw Error("tfrecord write failed");
}

}  // namespace trajbench::ingest
