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
#include <stdexcept>
#include <string>

namespace trajbench {

/// Root of every error the harness raises. Catch this at process and
/// per-dataset boundaries; catch the concrete types where recovery differs.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- ingestion ----

class ChecksumMismatch : public Error {
 public:
  explicit ChecksumMismatch(std::uint64_t offset, const std::string& which)
      : Error("checksum mismatch (" + which + ") in record at offset " + std::to_string(offset)),
        offset_(offset) {}
  std::uint64_t offset() const { return offset_; }

 private:
  std::uint64_t offset_;
};

class TruncatedRecord : public Error {
 public:
  explicit TruncatedRecord(std::uint64_t offset)
      : Error("truncated record at offset " + std::to_string(offset)), offset_(offset) {}
  std::uint64_t offset() const { return offset_; }

 private:
  std::uint64_t offset_;
};

class MalformedProto : public Error {
 public:
  MalformedProto(std::uint64_t offset, const std::string& detail)
      : Error("malformed example in record at offset " + std::to_string(offset) + ": " + detail),
        offset_(offset),
        detail_(detail) {}
  std::uint64_t offset() const { return offset_; }
  const std::string& detail() const { return detail_; }

 private:
  std::uint64_t offset_;
  std::string detail_;
};

class MissingRequiredKey : public Error {
 public:
  explicit MissingRequiredKey(const std::string& key)
      : Error("missing required feature key '" + key + "'"), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class ImageDecodeError : public Error {
 public:
  ImageDecodeError(const std::string& key, std::size_t step_index, const std::string& detail)
      : Error("cannot decode image '" + key + "' at step " + std::to_string(step_index) + ": " +
              detail),
        key_(key),
        step_index_(step_index) {}
  const std::string& key() const { return key_; }
  std::size_t step_index() const { return step_index_; }

 private:
  std::string key_;
  std::size_t step_index_;
};

class SchemaViolation : public Error {
 public:
  SchemaViolation(std::size_t line_number, const std::string& detail)
      : Error("schema violation at line " + std::to_string(line_number) + ": " + detail),
        line_number_(line_number) {}
  std::size_t line_number() const { return line_number_; }

 private:
  std::size_t line_number_;
};

// ---- registry ----

class UnknownDataset : public Error {
 public:
  explicit UnknownDataset(const std::string& name)
      : Error("unknown dataset '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class PredefinedSplitExists : public Error {
 public:
  explicit PredefinedSplitExists(const std::string& name)
      : Error("dataset '" + name + "' already ships an evaluation split") {}
};

class SignatureError : public Error {
 public:
  using Error::Error;
};

// ---- numerics ----

class DomainError : public Error {
 public:
  using Error::Error;
};

class DegenerateRange : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  LengthMismatch(std::size_t expected, std::size_t actual)
      : Error("length mismatch: expected " + std::to_string(expected) + ", got " +
              std::to_string(actual)) {}
};

// ---- adapters ----

class UnsupportedChannels : public Error {
 public:
  explicit UnsupportedChannels(int channels)
      : Error("unsupported channel count " + std::to_string(channels)) {}
};

class NoImageAvailable : public Error {
 public:
  NoImageAvailable() : Error("no mapped image view present in step") {}
};

class HandshakeFailure : public Error {
 public:
  using Error::Error;
};

class TransportClosed : public Error {
 public:
  using Error::Error;
};

// ---- run orchestration ----

class ConfigError : public Error {
 public:
  using Error::Error;
};

class MissingManifest : public Error {
 public:
  explicit MissingManifest(const std::string& path) : Error("manifest not found: " + path) {}
};

}  // namespace trajbench
