// Copyright 2026 The Chef's Hat Engine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Network front end for the hub. One listening port serves three things:
// newline-delimited JSON frames over plain TCP, the same frames over a
// WebSocket upgrade, and `GET /health`.

#ifndef CHEFSHAT_SERVER_HPP_
#define CHEFSHAT_SERVER_HPP_

#include <cstdint>
#include <memory>
#include <string>

#include "chefshat/hub.hpp"

namespace chefshat::server {

struct ServerOptions {
  std::string host = "127.0.0.1";
  uint16_t port = 0;  // 0 picks a free port
  int threads = 1;
  int64_t tick_ms = 50;  // timer resolution for turn timers and grace
};

class Server {
 public:
  Server(ServerOptions options, HubOptions hub_options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds and starts serving on background threads. Throws Error(kIo).
  void Start();
  // The bound port (valid after Start).
  uint16_t port() const;
  // Stops accepting, drops connections and joins the threads. Idempotent.
  void Stop();
  // Blocks until Stop() is called from another thread or a signal handler.
  void Wait();

  Hub& hub();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace chefshat::server

#endif  // CHEFSHAT_SERVER_HPP_
