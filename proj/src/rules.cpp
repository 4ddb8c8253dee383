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

#include "chefshat/rules.hpp"

#include <string>

#include "chefshat/error.hpp"

namespace chefshat {
namespace {

nlohmann::json OptionalInt(const std::optional<int>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

// Checks that `action.cards` is a set of `count` distinct held cards that
// together make a play of `action.face`.
bool CardsMakeThePlay(const Hand& hand, const Action& action, JokerMode mode) {
  if (action.face < kJokerFace || action.face > kMaxFace) return false;
  if (action.count < 1 ||
      action.count != static_cast<int>(action.cards.size())) {
    return false;
  }
  CardSet seen;
  int naturals = 0;
  for (CardUid uid : action.cards) {
    if (!hand.cards.contains(uid) || seen.contains(uid)) return false;
    seen.insert(uid);
    const int face = FaceOf(uid);
    if (face == action.face) {
      ++naturals;
    } else if (!(mode == JokerMode::kWild && face == kJokerFace)) {
      return false;
    }
  }
  return naturals > 0;
}

}  // namespace

std::string_view ReasonName(LegalityReason reason) {
  switch (reason) {
    case LegalityReason::kOk: return "OK";
    case LegalityReason::kNotRarer: return "NOT_RARER";
    case LegalityReason::kTooFewCopies: return "TOO_FEW_COPIES";
    case LegalityReason::kBoardFull: return "BOARD_FULL";
    case LegalityReason::kCardsNotHeld: return "CARDS_NOT_HELD";
    case LegalityReason::kAlreadyPassed: return "ALREADY_PASSED";
    case LegalityReason::kNotYourTurn: return "NOT_YOUR_TURN";
    case LegalityReason::kOpenerMustPlay: return "OPENER_MUST_PLAY";
  }
  return "UNKNOWN";
}

LegalityResult ValidatePlay(const PizzaState& pizza, const Hand& hand,
                            const Action& action, Seat seat, JokerMode mode) {
  using R = LegalityReason;
  if (pizza.to_act != seat) return LegalityResult::Reject(R::kNotYourTurn);
  if (pizza.passed.contains(seat)) {
    return LegalityResult::Reject(R::kAlreadyPassed);
  }
  if (action.is_pass()) {
    if (pizza.empty() && seat == pizza.opener) {
      return LegalityResult::Reject(R::kOpenerMustPlay);
    }
    return LegalityResult::Ok();
  }
  if (hand.owner != seat || !CardsMakeThePlay(hand, action, mode)) {
    return LegalityResult::Reject(R::kCardsNotHeld);
  }
  if (!pizza.empty()) {
    if (action.face >= *pizza.top_face) {
      return LegalityResult::Reject(R::kNotRarer);
    }
    if (action.count < pizza.top_count) {
      return LegalityResult::Reject(R::kTooFewCopies);
    }
  }
  if (pizza.slots_used + action.count > kPizzaSlots) {
    return LegalityResult::Reject(R::kBoardFull);
  }
  return LegalityResult::Ok();
}

std::optional<std::vector<CardUid>> CanonicalPlayCards(const Hand& hand,
                                                       int face, int count,
                                                       JokerMode mode) {
  if (face < kJokerFace || face > kMaxFace || count < 1) return std::nullopt;
  const CardSet naturals = hand.cards & CardSet::OfFace(face);
  if (naturals.empty()) return std::nullopt;
  std::vector<CardUid> spent = naturals.uids();
  if (mode == JokerMode::kWild && face != kJokerFace) {
    for (CardUid uid : (hand.cards & CardSet::OfFace(kJokerFace)).uids()) {
      spent.push_back(uid);
    }
  }
  if (static_cast<int>(spent.size()) < count) return std::nullopt;
  spent.resize(count);
  return spent;
}

std::vector<Action> LegalActions(const PizzaState& pizza, const Hand& hand,
                                 Seat seat, JokerMode mode) {
  std::vector<Action> out;
  if (pizza.to_act != seat || pizza.passed.contains(seat)) return out;
  for (int face = kMaxFace; face >= kJokerFace; --face) {
    if (!pizza.empty() && face >= *pizza.top_face) continue;
    int available = hand.cards.CountFace(face);
    if (available == 0) continue;
    if (mode == JokerMode::kWild && face != kJokerFace) {
      available += hand.cards.CountFace(kJokerFace);
    }
    for (int count = 1; count <= available; ++count) {
      auto cards = CanonicalPlayCards(hand, face, count, mode);
      Action play = Action::Play(face, count, std::move(*cards));
      if (ValidatePlay(pizza, hand, play, seat, mode).legal) {
        out.push_back(std::move(play));
      }
    }
  }
  if (ValidatePlay(pizza, hand, Action::Pass(), seat, mode).legal) {
    out.push_back(Action::Pass());
  }
  return out;
}

std::pair<PizzaState, Hand> ApplyPlay(const PizzaState& pizza,
                                      const Hand& hand, const Action& action,
                                      Seat seat, JokerMode mode) {
  const LegalityResult check = ValidatePlay(pizza, hand, action, seat, mode);
  if (!check.legal || !action.is_play()) {
    throw Error(ErrorCode::kIllegalAction,
                std::string(action.is_play() ? ReasonName(check.reason)
                                             : "not a play"));
  }
  PizzaState next = pizza;
  Hand rest = hand;
  next.slots_used += action.count;
  next.top_face = action.face;
  next.top_count = action.count;
  next.last_player_to_play = seat;
  for (CardUid uid : action.cards) {
    next.placed.push_back(uid);
    rest.cards.erase(uid);
  }
  return {std::move(next), rest};
}

PizzaState ApplyPass(const PizzaState& pizza, Seat seat) {
  if (pizza.to_act != seat) {
    throw Error(ErrorCode::kIllegalAction, "NOT_YOUR_TURN");
  }
  if (pizza.passed.contains(seat)) {
    throw Error(ErrorCode::kIllegalAction, "ALREADY_PASSED");
  }
  if (pizza.empty() && seat == pizza.opener) {
    throw Error(ErrorCode::kIllegalAction, "OPENER_MUST_PLAY");
  }
  PizzaState next = pizza;
  next.passed.insert(seat);
  return next;
}

bool IsPizzaDone(const PizzaState& pizza, SeatSet active) {
  if (pizza.slots_used >= kPizzaSlots || active.size() <= 1) return true;
  for (Seat s : active.seats()) {
    if (s == pizza.last_player_to_play) continue;
    if (!pizza.passed.contains(s)) return false;
  }
  return true;
}

std::optional<Seat> NextToAct(const PizzaState& pizza, SeatSet active,
                              Seat previous) {
  for (int step = 1; step < kNumSeats; ++step) {
    const Seat s = (previous + step) % kNumSeats;
    if (active.contains(s) && !pizza.passed.contains(s)) return s;
  }
  return std::nullopt;
}

nlohmann::json ToJson(const Action& action) {
  if (action.is_pass()) return {{"kind", "pass"}};
  return {{"kind", "play"},
          {"face", action.face},
          {"count", action.count},
          {"cards", action.cards}};
}

Action ActionFromJson(const nlohmann::json& j, const Hand* hand,
                      JokerMode mode) {
  auto bad = [](const std::string& what) {
    return Error(ErrorCode::kInvalidArgument, "malformed action: " + what);
  };
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw bad("missing kind");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "pass") return Action::Pass();
  if (kind != "play") throw bad("unknown kind " + kind);
  if (!j.contains("face") || !j["face"].is_number_integer()) {
    throw bad("missing face");
  }
  Action a;
  a.kind = ActionKind::kPlay;
  a.face = j["face"].get<int>();
  if (j.contains("cards")) {
    if (!j["cards"].is_array()) throw bad("cards must be an array");
    for (const auto& c : j["cards"]) {
      if (!c.is_number_integer()) throw bad("card uids must be integers");
      a.cards.push_back(c.get<int>());
    }
    a.count = static_cast<int>(a.cards.size());
    if (j.contains("count") &&
        (!j["count"].is_number_integer() || j["count"].get<int>() != a.count)) {
      throw bad("count does not match cards");
    }
    return a;
  }
  if (!j.contains("count") || !j["count"].is_number_integer()) {
    throw bad("missing count");
  }
  a.count = j["count"].get<int>();
  if (hand == nullptr) throw bad("missing cards");
  auto cards = CanonicalPlayCards(*hand, a.face, a.count, mode);
  // Leave the cards empty so validation reports CARDS_NOT_HELD.
  if (cards) a.cards = std::move(*cards);
  return a;
}

nlohmann::json ToJson(const PizzaState& pizza) {
  nlohmann::json passed = nlohmann::json::array();
  for (Seat s : pizza.passed.seats()) passed.push_back(s);
  return {{"slots_used", pizza.slots_used},
          {"top_face", OptionalInt(pizza.top_face)},
          {"top_count", pizza.top_count},
          {"passed", passed},
          {"last_player_to_play", OptionalInt(pizza.last_player_to_play)},
          {"opener", pizza.opener},
          {"to_act", OptionalInt(pizza.to_act)},
          {"placed", pizza.placed}};
}

}  // namespace chefshat
