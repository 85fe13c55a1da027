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
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "trajbench/util.hpp"

namespace trajbench::ingest {

/// One framed record: its payload and the byte offset of its length field.
struct RawRecord {
  Bytes payload;
  std::uint64_t offset = 0;

  friend bool operator==(const RawRecord&, const RawRecord&) = default;
};

/// Single-pass reader over a TFRecord stream.
///
/// Framing per record: u64le length, masked CRC32C of those 8 bytes,
/// payload, masked CRC32C of the payload. The length checksum is verified
/// before the payload buffer is allocated, so a corrupted header never causes
/// an oversized allocation. Only one payload is held at a time.
class TfRecordReader {
 public:
  explicit TfRecordReader(std::istream& in) : in_(in) {}

  /// Next record, or nullopt at a clean end of stream.
  /// Throws ChecksumMismatch or TruncatedRecord.
  std::optional<RawRecord> next();

  std::uint64_t position() const { return position_; }
  std::uint64_t records_read() const { return records_read_; }

 private:
  bool read_exact(std::uint8_t* dst, std::size_t n);

  std::istream& in_;
  std::uint64_t position_ = 0;
  std::uint64_t records_read_ = 0;
};

/// Reads the whole stream. Prefer TfRecordReader for large inputs.
std::vector<RawRecord> parse_tfrecord_stream(std::istream& in);

class TfRecordWriter {
 public:
  explicit TfRecordWriter(std::ostream& out) : out_(out) {}
  void write(std::span<const std::uint8_t> payload);

 private:
  std::ostream& out_;
};

}  // namespace trajbench::ingest
