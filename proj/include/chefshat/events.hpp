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

#ifndef CHEFSHAT_EVENTS_HPP_
#define CHEFSHAT_EVENTS_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chefshat/cards.hpp"
#include "chefshat/config.hpp"
#include "json.hpp"

namespace chefshat {

enum class SpecialKind { kFoodFight, kDinnerIsServed };
enum class EndReason { kTarget, kCutoff };

std::string_view SpecialKindName(SpecialKind kind);
std::string_view EndReasonName(EndReason reason);

namespace payload {

struct MatchStarted {
  RuleConfig rules;
  uint64_t seed = 0;
  friend bool operator==(const MatchStarted&, const MatchStarted&) = default;
};
struct ShiftStarted {
  int shift = 0;
  friend bool operator==(const ShiftStarted&, const ShiftStarted&) = default;
};
struct Dealt {
  Seat seat = 0;
  std::vector<CardUid> cards;
  friend bool operator==(const Dealt&, const Dealt&) = default;
};
struct SpecialActionDeclared {
  Seat seat = 0;
  SpecialKind kind = SpecialKind::kFoodFight;
  friend bool operator==(const SpecialActionDeclared&,
                         const SpecialActionDeclared&) = default;
};
struct ExchangeForced {
  Seat from = 0;
  Seat to = 0;
  std::vector<CardUid> cards;
  friend bool operator==(const ExchangeForced&, const ExchangeForced&) = default;
};
struct ExchangeReturned {
  Seat from = 0;
  Seat to = 0;
  std::vector<CardUid> cards;
  friend bool operator==(const ExchangeReturned&,
                         const ExchangeReturned&) = default;
};
struct PizzaOpened {
  Seat opener = 0;
  friend bool operator==(const PizzaOpened&, const PizzaOpened&) = default;
};
struct CardsPlayed {
  Seat seat = 0;
  int face = 0;
  int count = 0;
  std::vector<CardUid> cards;
  bool forced = false;  // timeout or agent-fault fallback
  friend bool operator==(const CardsPlayed&, const CardsPlayed&) = default;
};
struct Passed {
  Seat seat = 0;
  bool forced = false;
  friend bool operator==(const Passed&, const Passed&) = default;
};
struct PizzaDone {
  std::vector<CardUid> cards;
  std::optional<Seat> last_player;
  friend bool operator==(const PizzaDone&, const PizzaDone&) = default;
};
struct PlayerFinished {
  Seat seat = 0;
  int position = 0;  // 1-based
  friend bool operator==(const PlayerFinished&, const PlayerFinished&) = default;
};
struct ShiftEnded {
  std::vector<Seat> finishing_order;
  friend bool operator==(const ShiftEnded&, const ShiftEnded&) = default;
};
struct RolesAssigned {
  std::array<RoleKind, kNumSeats> roles{};
  friend bool operator==(const RolesAssigned&, const RolesAssigned&) = default;
};
struct ScoresUpdated {
  std::array<int, kNumSeats> deltas{};
  std::array<int, kNumSeats> scores{};
  friend bool operator==(const ScoresUpdated&, const ScoresUpdated&) = default;
};
struct MatchEnded {
  std::optional<Seat> winner;
  EndReason reason = EndReason::kTarget;
  std::array<int, kNumSeats> scores{};
  friend bool operator==(const MatchEnded&, const MatchEnded&) = default;
};
// An agent returned something the engine refused; a fallback move follows.
struct AgentFault {
  Seat seat = 0;
  std::string decision;  // "play" or "exchange_return"
  std::string reason;
  friend bool operator==(const AgentFault&, const AgentFault&) = default;
};

}  // namespace payload

// Alternative order matches EventKind.
using Payload =
    std::variant<payload::MatchStarted, payload::ShiftStarted, payload::Dealt,
                 payload::SpecialActionDeclared, payload::ExchangeForced,
                 payload::ExchangeReturned, payload::PizzaOpened,
                 payload::CardsPlayed, payload::Passed, payload::PizzaDone,
                 payload::PlayerFinished, payload::ShiftEnded,
                 payload::RolesAssigned, payload::ScoresUpdated,
                 payload::MatchEnded, payload::AgentFault>;

enum class EventKind {
  kMatchStarted,
  kShiftStarted,
  kDealt,
  kSpecialActionDeclared,
  kExchangeForced,
  kExchangeReturned,
  kPizzaOpened,
  kCardsPlayed,
  kPassed,
  kPizzaDone,
  kPlayerFinished,
  kShiftEnded,
  kRolesAssigned,
  kScoresUpdated,
  kMatchEnded,
  kAgentFault,
};

std::string_view EventKindName(EventKind kind);

struct Event {
  int seq = 0;
  int shift = 0;
  Payload payload;
  // Absent for public events; otherwise the one seat allowed to see it.
  std::optional<Seat> private_to;

  EventKind kind() const { return static_cast<EventKind>(payload.index()); }
  bool is_public() const { return !private_to.has_value(); }
  template <typename T>
  const T* as() const {
    return std::get_if<T>(&payload);
  }
  friend bool operator==(const Event&, const Event&) = default;
};

nlohmann::json ToJson(const Event& event);
// Throws Error(kCorruptLog) on anything malformed.
Event EventFromJson(const nlohmann::json& j);

// One line of a JSONL event log, without the trailing newline.
std::string CanonicalLine(const Event& event);
std::string ToJsonl(const std::vector<Event>& events);
// Throws Error(kCorruptLog).
std::vector<Event> ParseJsonl(std::string_view text);

}  // namespace chefshat

#endif  // CHEFSHAT_EVENTS_HPP_
