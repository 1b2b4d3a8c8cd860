// Copyright 2026 The ELI Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace eli::net {

/// Connected TCP stream carrying newline-terminated text lines.
class LineSocket {
 public:
  LineSocket() = default;
  explicit LineSocket(int fd) : fd_(fd) {}
  ~LineSocket();
  LineSocket(LineSocket&& other) noexcept;
  LineSocket& operator=(LineSocket&& other) noexcept;
  LineSocket(const LineSocket&) = delete;
  LineSocket& operator=(const LineSocket&) = delete;

  /// Connects to host:port; returns an invalid socket on failure or timeout.
  static LineSocket connect(const std::string& host, int port,
                            std::chrono::milliseconds timeout);

  bool valid() const { return fd_ >= 0; }

  /// Sends `line` followed by '\n'. Returns false if the peer is gone.
  bool send_line(std::string_view line);

  /// Next line without its terminator. std::nullopt on timeout, EOF, or error.
  /// A negative timeout blocks indefinitely.
  std::optional<std::string> read_line(std::chrono::milliseconds timeout);

  /// True once the peer closed the stream.
  bool closed() const { return closed_; }

  void close();

 private:
  int fd_ = -1;
  bool closed_ = false;
  std::string buffer_;
};

/// Accepts connections on a port and runs `handler` for each on its own
/// thread. Port 0 asks the OS for an ephemeral port (see port()).
class LineServer {
 public:
  using Handler = std::function<void(LineSocket&)>;

  LineServer(const std::string& host, int port, Handler handler);
  ~LineServer();
  LineServer(const LineServer&) = delete;
  LineServer& operator=(const LineServer&) = delete;

  int port() const { return port_; }
  void stop();

 private:
  void accept_loop();

  int listen_fd_ = -1;
  int port_ = 0;
  Handler handler_;
  std::atomic<bool> running_{true};
  std::thread acceptor_;
  std::mutex workers_mu_;
  std::vector<std::thread> workers_;
  std::vector<int> client_fds_;
};

/// Splits "host:port"; throws std::invalid_argument when malformed.
std::pair<std::string, int> parse_endpoint(const std::string& endpoint);

}  // namespace eli::net
