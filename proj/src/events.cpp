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

#include "chefshat/events.hpp"

#include <array>

#include "chefshat/error.hpp"

namespace chefshat {
namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 16> kKindNames = {
    "MatchStarted",     "ShiftStarted",  "Dealt",
    "SpecialActionDeclared", "ExchangeForced", "ExchangeReturned",
    "PizzaOpened",      "CardsPlayed",   "Passed",
    "PizzaDone",        "PlayerFinished", "ShiftEnded",
    "RolesAssigned",    "ScoresUpdated", "MatchEnded",
    "AgentFault"};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

[[noreturn]] void Corrupt(const std::string& what) {
  throw Error(ErrorCode::kCorruptLog, what);
}

json OptSeat(const std::optional<Seat>& s) {
  return s ? json(*s) : json(nullptr);
}

json PayloadJson(const Payload& p) {
  return std::visit(
      Overloaded{
          [](const payload::MatchStarted& e) -> json {
            return {{"rules", ToJson(e.rules)}, {"seed", e.seed}};
          },
          [](const payload::ShiftStarted& e) -> json {
            return {{"shift", e.shift}};
          },
          [](const payload::Dealt& e) -> json {
            return {{"seat", e.seat}, {"cards", e.cards}};
          },
          [](const payload::SpecialActionDeclared& e) -> json {
            return {{"seat", e.seat}, {"kind", SpecialKindName(e.kind)}};
          },
          [](const payload::ExchangeForced& e) -> json {
            return {{"from", e.from}, {"to", e.to}, {"cards", e.cards}};
          },
          [](const payload::ExchangeReturned& e) -> json {
            return {{"from", e.from}, {"to", e.to}, {"cards", e.cards}};
          },
          [](const payload::PizzaOpened& e) -> json {
            return {{"opener", e.opener}};
          },
          [](const payload::CardsPlayed& e) -> json {
            return {{"seat", e.seat},
                    {"face", e.face},
                    {"count", e.count},
                    {"cards", e.cards},
                    {"forced", e.forced}};
          },
          [](const payload::Passed& e) -> json {
            return {{"seat", e.seat}, {"forced", e.forced}};
          },
          [](const payload::PizzaDone& e) -> json {
            return {{"cards", e.cards}, {"last_player", OptSeat(e.last_player)}};
          },
          [](const payload::PlayerFinished& e) -> json {
            return {{"seat", e.seat}, {"position", e.position}};
          },
          [](const payload::ShiftEnded& e) -> json {
            return {{"finishing_order", e.finishing_order}};
          },
          [](const payload::RolesAssigned& e) -> json {
            json roles = json::array();
            for (RoleKind r : e.roles) roles.push_back(RoleName(r));
            return {{"roles", roles}};
          },
          [](const payload::ScoresUpdated& e) -> json {
            return {{"deltas", e.deltas}, {"scores", e.scores}};
          },
          [](const payload::MatchEnded& e) -> json {
            return {{"winner", OptSeat(e.winner)},
                    {"reason", EndReasonName(e.reason)},
                    {"scores", e.scores}};
          },
          [](const payload::AgentFault& e) -> json {
            return {{"seat", e.seat},
                    {"decision", e.decision},
                    {"reason", e.reason}};
          },
      },
      p);
}

int GetInt(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_number_integer()) {
    Corrupt(std::string("expected integer field ") + key);
  }
  return j[key].get<int>();
}

Seat GetSeat(const json& j, const char* key) {
  const int s = GetInt(j, key);
  if (s < 0 || s >= kNumSeats) Corrupt(std::string("seat out of range in ") + key);
  return s;
}

std::optional<Seat> GetOptSeat(const json& j, const char* key) {
  if (!j.contains(key)) Corrupt(std::string("missing field ") + key);
  if (j[key].is_null()) return std::nullopt;
  return GetSeat(j, key);
}

bool GetBool(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_boolean()) {
    Corrupt(std::string("expected boolean field ") + key);
  }
  return j[key].get<bool>();
}

std::string GetString(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) {
    Corrupt(std::string("expected string field ") + key);
  }
  return j[key].get<std::string>();
}

std::vector<int> GetIntArray(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) {
    Corrupt(std::string("expected array field ") + key);
  }
  std::vector<int> out;
  for (const auto& v : j[key]) {
    if (!v.is_number_integer()) Corrupt(std::string("non-integer in ") + key);
    out.push_back(v.get<int>());
  }
  return out;
}

std::vector<CardUid> GetCards(const json& j, const char* key) {
  auto cards = GetIntArray(j, key);
  for (int uid : cards) {
    if (!IsValidUid(uid)) Corrupt("card uid out of range");
  }
  return cards;
}

std::array<int, kNumSeats> GetSeatArray(const json& j, const char* key) {
  auto v = GetIntArray(j, key);
  if (v.size() != kNumSeats) Corrupt(std::string("expected 4 entries in ") + key);
  return {v[0], v[1], v[2], v[3]};
}

SpecialKind ParseSpecialKind(const std::string& s) {
  if (s == "FoodFight") return SpecialKind::kFoodFight;
  if (s == "DinnerIsServed") return SpecialKind::kDinnerIsServed;
  Corrupt("unknown special action " + s);
}

Payload PayloadFromJson(EventKind kind, const json& p) {
  if (!p.is_object()) Corrupt("payload must be an object");
  switch (kind) {
    case EventKind::kMatchStarted: {
      payload::MatchStarted e;
      if (!p.contains("rules") || !p.contains("seed") ||
          !p["seed"].is_number_unsigned()) {
        Corrupt("MatchStarted needs rules and an unsigned seed");
      }
      try {
        e.rules = RuleConfigFromJson(p["rules"]);
      } catch (const Error& err) {
        Corrupt(err.what());
      }
      e.seed = p["seed"].get<uint64_t>();
      return e;
    }
    case EventKind::kShiftStarted:
      return payload::ShiftStarted{GetInt(p, "shift")};
    case EventKind::kDealt:
      return payload::Dealt{GetSeat(p, "seat"), GetCards(p, "cards")};
    case EventKind::kSpecialActionDeclared:
      return payload::SpecialActionDeclared{
          GetSeat(p, "seat"), ParseSpecialKind(GetString(p, "kind"))};
    case EventKind::kExchangeForced:
      return payload::ExchangeForced{GetSeat(p, "from"), GetSeat(p, "to"),
                                     GetCards(p, "cards")};
    case EventKind::kExchangeReturned:
      return payload::ExchangeReturned{GetSeat(p, "from"), GetSeat(p, "to"),
                                       GetCards(p, "cards")};
    case EventKind::kPizzaOpened:
      return payload::PizzaOpened{GetSeat(p, "opener")};
    case EventKind::kCardsPlayed:
      return payload::CardsPlayed{GetSeat(p, "seat"), GetInt(p, "face"),
                                  GetInt(p, "count"), GetCards(p, "cards"),
                                  GetBool(p, "forced")};
    case EventKind::kPassed:
      return payload::Passed{GetSeat(p, "seat"), GetBool(p, "forced")};
    case EventKind::kPizzaDone:
      return payload::PizzaDone{GetCards(p, "cards"),
                                GetOptSeat(p, "last_player")};
    case EventKind::kPlayerFinished:
      return payload::PlayerFinished{GetSeat(p, "seat"),
                                     GetInt(p, "position")};
    case EventKind::kShiftEnded: {
      payload::ShiftEnded e;
      for (int s : GetIntArray(p, "finishing_order")) {
        if (s < 0 || s >= kNumSeats) Corrupt("seat out of range");
        e.finishing_order.push_back(s);
      }
      return e;
    }
    case EventKind::kRolesAssigned: {
      payload::RolesAssigned e;
      if (!p.contains("roles") || !p["roles"].is_array() ||
          p["roles"].size() != kNumSeats) {
        Corrupt("RolesAssigned needs 4 roles");
      }
      for (int i = 0; i < kNumSeats; ++i) {
        if (!p["roles"][i].is_string()) Corrupt("role must be a string");
        auto r = RoleFromName(p["roles"][i].get<std::string>());
        if (!r) Corrupt("unknown role");
        e.roles[i] = *r;
      }
      return e;
    }
    case EventKind::kScoresUpdated:
      return payload::ScoresUpdated{GetSeatArray(p, "deltas"),
                                    GetSeatArray(p, "scores")};
    case EventKind::kMatchEnded: {
      payload::MatchEnded e;
      e.winner = GetOptSeat(p, "winner");
      const std::string reason = GetString(p, "reason");
      if (reason == "TARGET") {
        e.reason = EndReason::kTarget;
      } else if (reason == "CUTOFF") {
        e.reason = EndReason::kCutoff;
      } else {
        Corrupt("unknown end reason " + reason);
      }
      e.scores = GetSeatArray(p, "scores");
      return e;
    }
    case EventKind::kAgentFault:
      return payload::AgentFault{GetSeat(p, "seat"), GetString(p, "decision"),
                                 GetString(p, "reason")};
  }
  Corrupt("unknown event kind");
}

}  // namespace

std::string_view SpecialKindName(SpecialKind kind) {
  return kind == SpecialKind::kFoodFight ? "FoodFight" : "DinnerIsServed";
}

std::string_view EndReasonName(EndReason reason) {
  return reason == EndReason::kTarget ? "TARGET" : "CUTOFF";
}

std::string_view EventKindName(EventKind kind) {
  return kKindNames[static_cast<size_t>(kind)];
}

json ToJson(const Event& event) {
  json redaction = event.private_to
                       ? json{{"class", "PrivateToSeat"},
                              {"seat", *event.private_to}}
                       : json{{"class", "Public"}};
  return {{"seq", event.seq},
          {"shift", event.shift},
          {"kind", EventKindName(event.kind())},
          {"payload", PayloadJson(event.payload)},
          {"redaction", redaction}};
}

Event EventFromJson(const json& j) {
  if (!j.is_object()) Corrupt("event must be an object");
  for (const char* key : {"seq", "shift", "kind", "payload", "redaction"}) {
    if (!j.contains(key)) Corrupt(std::string("event missing ") + key);
  }
  if (j.size() != 5) Corrupt("event has unexpected fields");
  Event e;
  e.seq = GetInt(j, "seq");
  e.shift = GetInt(j, "shift");
  const std::string kind_name = GetString(j, "kind");
  std::optional<EventKind> kind;
  for (size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == kind_name) kind = static_cast<EventKind>(i);
  }
  if (!kind) Corrupt("unknown event kind " + kind_name);
  e.payload = PayloadFromJson(*kind, j["payload"]);
  const json& red = j["redaction"];
  const std::string cls = GetString(red, "class");
  if (cls == "PrivateToSeat") {
    e.private_to = GetSeat(red, "seat");
  } else if (cls != "Public") {
    Corrupt("unknown redaction class " + cls);
  }
  return e;
}

std::string CanonicalLine(const Event& event) { return ToJson(event).dump(); }

std::string ToJsonl(const std::vector<Event>& events) {
  std::string out;
  for (const Event& e : events) {
    out += CanonicalLine(e);
    out += '\n';
  }
  return out;
}

std::vector<Event> ParseJsonl(std::string_view text) {
  std::vector<Event> events;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) Corrupt("line is not valid JSON");
    events.push_back(EventFromJson(j));
  }
  return events;
}

}  // namespace chefshat
