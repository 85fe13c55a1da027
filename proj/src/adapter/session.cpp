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

#include "trajbench/adapter/session.hpp"

#include <algorithm>

#include "trajbench/adapter/prompt.hpp"
#include "trajbench/error.hpp"

namespace trajbench::adapter {
namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

}  // namespace

void SessionStats::record(const CoercionOutcome& outcome, double latency_ms) {
  ++requests;
  if (outcome.reason) {
    ++fallbacks;
    ++fallbacks_by_reason[*outcome.reason];
  }
  total_latency_ms += latency_ms;
  max_latency_ms = std::max(max_latency_ms, latency_ms);
}

void SessionStats::merge(const SessionStats& other) {
  requests += other.requests;
  fallbacks += other.fallbacks;
  for (const auto& [r, n] : other.fallbacks_by_reason) fallbacks_by_reason[r] += n;
  dropped_images += other.dropped_images;
  total_latency_ms += other.total_latency_ms;
  max_latency_ms = std::max(max_latency_ms, other.max_latency_ms);
}

double SessionStats::mean_latency_ms() const {
  return requests ? total_latency_ms / static_cast<double>(requests) : 0.0;
}

AdapterSession::AdapterSession(std::unique_ptr<Transport> transport, SessionOptions options)
    : transport_(std::move(transport)), options_(options), rng_(options.seed) {}

AdapterSession::~AdapterSession() {
  try {
    close();
  } catch (...) {
  }
}

const ReadyInfo& AdapterSession::handshake() {
  if (ready_) return *ready_;
  try {
    transport_->send(hello_message(options_.mode).dump());
    auto line = transport_->receive(options_.timeout);
    if (!line) throw HandshakeFailure("adapter did not answer hello in time");
    json msg = json::parse(*line, nullptr, false);
    if (msg.is_discarded() || !msg.is_object())
      throw HandshakeFailure("adapter answered hello with invalid JSON");
    ReadyInfo info = parse_ready(msg);
    if (options_.mode == RunMode::kVerify && !info.supports_verify)
      throw HandshakeFailure("adapter '" + info.name + "' does not support verify mode");
    ready_ = info;
  } catch (const HandshakeFailure&) {
    closed_ = true;
    throw;
  } catch (const Error& e) {
    closed_ = true;
    throw HandshakeFailure(std::string("handshake failed: ") + e.what());
  }
  return *ready_;
}

std::optional<AdapterResponse> AdapterSession::exchange(const AdapterRequest& request) {
  if (closed_ || !ready_) return std::nullopt;
  const std::string prompt = render_prompt(build_prompt_payload(request));
  const json msg = predict_message(request, prompt, ready_->max_image_bytes,
                                   &stats_.dropped_images);
  try {
    transport_->send(msg.dump());
    const auto deadline = Clock::now() + options_.timeout;
    for (;;) {
      auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
      if (left.count() < 0) left = std::chrono::milliseconds(0);
      auto line = transport_->receive(left);
      if (!line) {
        abandoned_ids_.insert(request.request_id);
        return std::nullopt;
      }
      json reply = json::parse(*line, nullptr, false);
      if (reply.is_discarded() || !reply.is_object()) return std::nullopt;
      AdapterResponse response;
      try {
        response = parse_response(reply);
      } catch (const Error&) {
        return std::nullopt;
      }
      if (response.request_id == request.request_id) return response;
      // Late answers to requests we already gave up on are discarded.
      if (abandoned_ids_.erase(response.request_id)) continue;
      return std::nullopt;
    }
  } catch (const TransportClosed&) {
    closed_ = true;
    return std::nullopt;
  }
}

CoercionOutcome AdapterSession::predict(const AdapterRequest& request) {
  const auto start = Clock::now();
  const std::size_t dim = request.expected_dim();
  auto response = exchange(request);
  CoercionOutcome outcome = response ? coerce_response(*response, dim, rng_)
                                     : fallback_outcome(dim, FallbackReason::kAdapterError, rng_);
  const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  stats_.record(outcome, ms);
  return outcome;
}

void AdapterSession::close() {
  if (!transport_) return;
  if (!closed_ && ready_) {
    try {
      transport_->send(bye_message().dump());
    } catch (const Error&) {
    }
  }
  closed_ = true;
  transport_->close();
  transport_.reset();
}

std::vector<CoercionOutcome> run_adapter_session(std::unique_ptr<Transport> transport,
                                                 std::span<const AdapterRequest> requests,
                                                 const SessionOptions& options,
                                                 SessionStats* stats, ReadyInfo* ready) {
  AdapterSession session(std::move(transport), options);
  const ReadyInfo& info = session.handshake();
  if (ready) *ready = info;
  std::vector<CoercionOutcome> outcomes;
  outcomes.reserve(requests.size());
  for (const auto& r : requests) outcomes.push_back(session.predict(r));
  session.close();
  if (stats) *stats = session.stats();
  return outcomes;
}

}  // namespace trajbench::adapter
