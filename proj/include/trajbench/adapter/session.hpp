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
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "trajbench/adapter/coerce.hpp"
#include "trajbench/adapter/protocol.hpp"
#include "trajbench/adapter/rng.hpp"
#include "trajbench/adapter/transport.hpp"

namespace trajbench::adapter {

inline constexpr std::chrono::milliseconds kDefaultRequestTimeout{60000};

struct SessionOptions {
  RunMode mode = RunMode::kEval;
  std::chrono::milliseconds timeout = kDefaultRequestTimeout;
  std::uint64_t seed = 0;
};

struct SessionStats {
  std::size_t requests = 0;
  std::size_t fallbacks = 0;
  std::map<FallbackReason, std::size_t> fallbacks_by_reason;
  std::size_t dropped_images = 0;
  double total_latency_ms = 0.0;
  double max_latency_ms = 0.0;

  void record(const CoercionOutcome& outcome, double latency_ms);
  void merge(const SessionStats& other);
  double mean_latency_ms() const;
};

/// One handshaken conversation with an adapter. Requests strictly alternate
/// with responses.
class AdapterSession {
 public:
  AdapterSession(std::unique_ptr<Transport> transport, SessionOptions options);
  ~AdapterSession();
  AdapterSession(const AdapterSession&) = delete;
  AdapterSession& operator=(const AdapterSession&) = delete;

  /// Sends hello and waits for ready. Throws HandshakeFailure on timeout,
  /// closure, a malformed reply, or verify mode without declared support.
  const ReadyInfo& handshake();

  /// Never throws for adapter misbehavior: timeouts, id mismatches, error
  /// replies, and a closed transport all become adapter_error fallbacks.
  CoercionOutcome predict(const AdapterRequest& request);

  /// Sends bye (best effort) and releases the transport.
  void close();

  const SessionStats& stats() const { return stats_; }
  const std::optional<ReadyInfo>& ready() const { return ready_; }
  bool transport_closed() const { return closed_; }

 private:
  std::optional<AdapterResponse> exchange(const AdapterRequest& request);

  std::unique_ptr<Transport> transport_;
  SessionOptions options_;
  Xoshiro256StarStar rng_;
  std::optional<ReadyInfo> ready_;
  SessionStats stats_;
  std::set<std::string> abandoned_ids_;
  bool closed_ = false;
};

/// Handshakes, predicts every request in order, and says bye. Exactly one
/// outcome per request. Throws HandshakeFailure.
std::vector<CoercionOutcome> run_adapter_session(std::unique_ptr<Transport> transport,
                                                 std::span<const AdapterRequest> requests,
                                                 const SessionOptions& options,
                                                 SessionStats* stats = nullptr,
                                                 ReadyInfo* ready = nullptr);

}  // namespace trajbench::adapter
