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

#include "trajbench/adapter/transport.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <csignal>
#include <cstring>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "trajbench/adapter/protocol.hpp"
#include "trajbench/error.hpp"

namespace trajbench::adapter {
namespace {

using Clock = std::chrono::steady_clock;

void ignore_sigpipe() {
  static const bool once = [] {
    std::signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)once;
}

void close_fd(int& fd) {
  if (fd >= 0) ::close(fd);
  fd = -1;
}

}  // namespace

// ---- stdio ----

StdioTransport::StdioTransport(const std::string& command) {
  ignore_sigpipe();
  int in_pipe[2];   // parent -> child
  int out_pipe[2];  // child -> parent
  if (::pipe2(in_pipe, O_CLOEXEC) != 0) throw TransportClosed("pipe: " + std::string(strerror(errno)));
  if (::pipe2(out_pipe, O_CLOEXEC) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    throw TransportClosed("pipe: " + std::string(strerror(errno)));
  }
  pid_t pid = ::fork();
  if (pid < 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) ::close(fd);
    throw TransportClosed("fork: " + std::string(strerror(errno)));
  }
  if (pid == 0) {
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
}

StdioTransport::~StdioTransport() { close(); }

void StdioTransport::send(const std::string& line) {
  if (to_child_ < 0) throw TransportClosed("adapter stdin is closed");
  std::string framed = line + "\n";
  std::size_t written = 0;
  while (written < framed.size()) {
    ssize_t n = ::write(to_child_, framed.data() + written, framed.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportClosed("write to adapter failed: " + std::string(strerror(errno)));
    }
    written += static_cast<std::size_t>(n);
  }
}

std::optional<std::string> StdioTransport::receive(std::chrono::milliseconds timeout) {
  const auto deadline = Clock::now() + timeout;
  for (;;) {
    if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      return line;
    }
    if (eof_ || from_child_ < 0) throw TransportClosed("adapter closed its output");
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
    if (left.count() <= 0) return std::nullopt;
    pollfd pfd{from_child_, POLLIN, 0};
    int rc = ::poll(&pfd, 1, static_cast<int>(std::min<long long>(left.count(), 1 << 30)));
    if (rc < 0) {
      if (errno == EINTR) continue;
      throw TransportClosed("poll failed: " + std::string(strerror(errno)));
    }
    if (rc == 0) return std::nullopt;
    char chunk[65536];
    ssize_t n = ::read(from_child_, chunk, sizeof chunk);
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      throw TransportClosed("read failed: " + std::string(strerror(errno)));
    }
    if (n == 0) {
      eof_ = true;
      continue;
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

void StdioTransport::close() {
  close_fd(to_child_);
  close_fd(from_child_);
  if (pid_ > 0) {
    // Give the adapter a moment to exit after stdin closes, then insist.
    for (int i = 0; i < 200; ++i) {
      int status = 0;
      pid_t r = ::waitpid(pid_, &status, WNOHANG);
      if (r == pid_ || r < 0) {
        pid_ = -1;
        return;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, nullptr, 0);
    pid_ = -1;
  }
}

// ---- http ----

struct HttpTransport::Impl {
  std::unique_ptr<httplib::Client> client;
  std::string path;
  bool closed = false;
};

HttpTransport::HttpTransport(const std::string& url, std::chrono::milliseconds timeout)
    : impl_(std::make_unique<Impl>()) {
  const std::string scheme = "http://";
  if (url.rfind(scheme, 0) != 0) throw ConfigError("adapter URL must start with http://: " + url);
  auto slash = url.find('/', scheme.size());
  std::string authority = url.substr(0, slash);
  impl_->path = slash == std::string::npos ? "/" : url.substr(slash);
  impl_->client = std::make_unique<httplib::Client>(authority);
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
  impl_->client->set_connection_timeout(std::chrono::seconds(5));
  impl_->client->set_read_timeout(secs.count(), usecs.count());
  impl_->client->set_write_timeout(secs.count(), usecs.count());
}

HttpTransport::~HttpTransport() = default;

void HttpTransport::send(const std::string& line) {
  if (impl_->closed) throw TransportClosed("HTTP adapter session is closed");
  auto res = impl_->client->Post(impl_->path, line, "application/x-ndjson");
  if (!res) {
    impl_->closed = true;
    throw TransportClosed("HTTP request failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    impl_->closed = true;
    throw TransportClosed("HTTP adapter answered status " + std::to_string(res->status));
  }
  std::size_t start = 0;
  const std::string& body = res->body;
  while (start < body.size()) {
    auto nl = body.find('\n', start);
    std::string msg = body.substr(start, nl == std::string::npos ? std::string::npos : nl - start);
    if (!msg.empty() && msg.back() == '\r') msg.pop_back();
    if (!msg.empty()) inbox_.push_back(std::move(msg));
    if (nl == std::string::npos) break;
    start = nl + 1;
  }
}

std::optional<std::string> HttpTransport::receive(std::chrono::milliseconds) {
  if (inbox_.empty()) {
    if (impl_->closed) throw TransportClosed("HTTP adapter session is closed");
    return std::nullopt;
  }
  std::string msg = std::move(inbox_.front());
  inbox_.pop_front();
  return msg;
}

void HttpTransport::close() { impl_->closed = true; }

// ---- in-process ----

void InProcessTransport::send(const std::string& line) {
  if (closed_) throw TransportClosed("in-process adapter is closed");
  for (auto& reply : handler_(line)) inbox_.push_back(std::move(reply));
}

std::optional<std::string> InProcessTransport::receive(std::chrono::milliseconds) {
  if (inbox_.empty()) {
    if (closed_) throw TransportClosed("in-process adapter is closed");
    return std::nullopt;
  }
  std::string msg = std::move(inbox_.front());
  inbox_.pop_front();
  return msg;
}

InProcessTransport::Handler make_echo_handler(const std::string& name) {
  return [name](const std::string& line) -> std::vector<std::string> {
    using nlohmann::json;
    json msg = json::parse(line, nullptr, false);
    if (msg.is_discarded() || !msg.is_object()) return {};
    const std::string type = msg.value("type", "");
    if (type == "hello")
      return {ready_message({name, 0, true}).dump()};
    if (type == "predict") {
      const std::string id = msg.value("request_id", "");
      if (msg.contains("verification_ground_truth"))
        return {json{{"type", "result"}, {"request_id", id},
                     {"action", msg["verification_ground_truth"]}}
                    .dump()};
      return {json{{"type", "error"}, {"request_id", id},
                   {"message", "echo adapter needs verification_ground_truth"}}
                  .dump()};
    }
    return {};
  };
}

std::unique_ptr<Transport> make_transport(const std::string& command, const std::string& url,
                                          std::chrono::milliseconds timeout) {
  if (command.empty() == url.empty())
    throw ConfigError("exactly one of an adapter command or an adapter URL is required");
  if (!url.empty()) return std::make_unique<HttpTransport>(url, timeout);
  if (command == kInternalEchoCommand)
    return std::make_unique<InProcessTransport>(make_echo_handler());
  return std::make_unique<StdioTransport>(command);
}

}  // namespace trajbench::adapter
