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

#include <chrono>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace trajbench::adapter {

/// Line-oriented, strictly alternating message channel to one adapter.
class Transport {
 public:
  virtual ~Transport() = default;

  /// Sends one message (no trailing newline). Throws TransportClosed.
  virtual void send(const std::string& line) = 0;
  /// Next message, or nullopt if none arrives within `timeout`.
  /// Throws TransportClosed once the peer has gone away.
  virtual std::optional<std::string> receive(std::chrono::milliseconds timeout) = 0;
  virtual void close() = 0;
};

/// Spawns `/bin/sh -c <command>` and talks newline-delimited JSON over the
/// child's stdin/stdout. The child's stderr is inherited.
class StdioTransport : public Transport {
 public:
  explicit StdioTransport(const std::string& command);
  ~StdioTransport() override;
  StdioTransport(const StdioTransport&) = delete;
  StdioTransport& operator=(const StdioTransport&) = delete;

  void send(const std::string& line) override;
  std::optional<std::string> receive(std::chrono::milliseconds timeout) override;
  void close() override;

 private:
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  bool eof_ = false;
};

/// Posts each message as the body of an HTTP POST to `url`
/// (http://host:port/path); each reply body may hold zero or more
/// newline-separated messages.
class HttpTransport : public Transport {
 public:
  HttpTransport(const std::string& url, std::chrono::milliseconds timeout);
  ~HttpTransport() override;

  void send(const std::string& line) override;
  std::optional<std::string> receive(std::chrono::milliseconds timeout) override;
  void close() override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::deque<std::string> inbox_;
};

/// Calls a handler in-process; each handler call returns the replies to one
/// message. Used for the built-in echo endpoint and tests.
class InProcessTransport : public Transport {
 public:
  using Handler = std::function<std::vector<std::string>(const std::string&)>;
  explicit InProcessTransport(Handler handler) : handler_(std::move(handler)) {}

  void send(const std::string& line) override;
  std::optional<std::string> receive(std::chrono::milliseconds timeout) override;
  void close() override { closed_ = true; }

 private:
  Handler handler_;
  std::deque<std::string> inbox_;
  bool closed_ = false;
};

/// Replay adapter: answers each predict with its verification ground truth
/// (an error reply when absent) and declares verify support.
InProcessTransport::Handler make_echo_handler(const std::string& name = "internal-echo");

/// Command prefix selecting the in-process echo endpoint instead of a process.
inline constexpr const char* kInternalEchoCommand = "internal:echo";

/// Builds a transport from a spawn command or URL (exactly one non-empty).
std::unique_ptr<Transport> make_transport(const std::string& command, const std::string& url,
                                          std::chrono::milliseconds timeout);

}  // namespace trajbench::adapter
