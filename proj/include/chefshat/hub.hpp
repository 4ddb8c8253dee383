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

// Transport-free game server: sessions, tables, turn timers and the wire
// protocol. Transports hand it whole frames and a sink for outbound frames;
// everything else lives here so it can be driven directly in tests.

#ifndef CHEFSHAT_HUB_HPP_
#define CHEFSHAT_HUB_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chefshat/config.hpp"
#include "chefshat/events.hpp"

namespace chefshat::server {

using ConnectionId = uint64_t;
// Receives one encoded frame. Called with table locks held: must not block
// and must not call back into the hub.
using Sink = std::function<void(std::string frame)>;

struct HubOptions {
  RuleConfig default_rules;
  int64_t default_turn_timer_ms = 0;  // 0 disables the timer
  int64_t reconnect_grace_ms = 60'000;
  std::string takeover_agent = "greedy";
  std::optional<std::filesystem::path> log_dir;
  // Sources for identifiers and time; defaults are random / steady_clock.
  std::function<std::string()> make_token;
  std::function<std::string()> make_table_id;
  std::function<uint64_t()> make_seed;
  std::function<int64_t()> now_ms;
};

struct HubCounts {
  int lobby = 0;
  int playing = 0;
  int finished = 0;
  int sessions = 0;
  int connections = 0;
};

class Hub {
 public:
  explicit Hub(HubOptions options = {});
  ~Hub();
  Hub(const Hub&) = delete;
  Hub& operator=(const Hub&) = delete;

  ConnectionId Connect(Sink sink);
  void Receive(ConnectionId conn, std::string_view frame);
  void Disconnect(ConnectionId conn);
  // Fires expired turn timers and reconnect-grace takeovers.
  void Tick();

  HubCounts Counts() const;
  // Full (unredacted) log of a started table.
  std::optional<std::vector<Event>> TableLog(const std::string& table_id) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// A public event as clients see it: MatchStarted loses its seed, which
// would otherwise reveal every deal.
nlohmann::json WireEvent(const Event& event);

}  // namespace chefshat::server

#endif  // CHEFSHAT_HUB_HPP_
