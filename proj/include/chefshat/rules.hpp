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

#ifndef CHEFSHAT_RULES_HPP_
#define CHEFSHAT_RULES_HPP_

#include <bit>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "chefshat/cards.hpp"
#include "chefshat/config.hpp"
#include "json.hpp"

namespace chefshat {

class SeatSet {
 public:
  constexpr SeatSet() = default;
  static constexpr SeatSet All() { return SeatSet(0x0F); }

  void insert(Seat s) { mask_ |= static_cast<uint8_t>(1u << s); }
  void erase(Seat s) { mask_ &= static_cast<uint8_t>(~(1u << s)); }
  bool contains(Seat s) const {
    return s >= 0 && s < kNumSeats && (mask_ >> s) & 1u;
  }
  int size() const { return std::popcount(static_cast<unsigned>(mask_)); }
  bool empty() const { return mask_ == 0; }
  std::vector<Seat> seats() const {
    std::vector<Seat> out;
    for (Seat s = 0; s < kNumSeats; ++s) {
      if (contains(s)) out.push_back(s);
    }
    return out;
  }
  friend bool operator==(const SeatSet&, const SeatSet&) = default;

 private:
  explicit constexpr SeatSet(uint8_t mask) : mask_(mask) {}
  uint8_t mask_ = 0;
};

// One pizza on the 11-slot board.
struct PizzaState {
  int slots_used = 0;
  std::optional<int> top_face;
  int top_count = 0;
  SeatSet passed;
  std::optional<Seat> last_player_to_play;
  Seat opener = 0;
  // Seat whose turn it is; absent once nobody can act.
  std::optional<Seat> to_act;
  // Cards on the board, in placement order.
  std::vector<CardUid> placed;

  static PizzaState OpenedBy(Seat opener) {
    PizzaState p;
    p.opener = opener;
    p.to_act = opener;
    return p;
  }
  bool empty() const { return slots_used == 0; }
  friend bool operator==(const PizzaState&, const PizzaState&) = default;
};

enum class ActionKind { kPlay, kPass };

// A pizza move. A play spends `count` cards of one `face`; face 0 is a Joker
// play.
struct Action {
  ActionKind kind = ActionKind::kPass;
  int face = 0;
  int count = 0;
  std::vector<CardUid> cards;

  static Action Pass() { return Action{}; }
  static Action Play(int face, int count, std::vector<CardUid> cards) {
    return Action{ActionKind::kPlay, face, count, std::move(cards)};
  }
  bool is_pass() const { return kind == ActionKind::kPass; }
  bool is_play() const { return kind == ActionKind::kPlay; }
  friend bool operator==(const Action&, const Action&) = default;
};

enum class LegalityReason {
  kOk,
  kNotRarer,
  kTooFewCopies,
  kBoardFull,
  kCardsNotHeld,
  kAlreadyPassed,
  kNotYourTurn,
  kOpenerMustPlay,
};

std::string_view ReasonName(LegalityReason reason);

struct LegalityResult {
  bool legal = false;
  LegalityReason reason = LegalityReason::kOk;

  static LegalityResult Ok() { return {true, LegalityReason::kOk}; }
  static LegalityResult Reject(LegalityReason r) { return {false, r}; }
  friend bool operator==(const LegalityResult&, const LegalityResult&) = default;
};

LegalityResult ValidatePlay(const PizzaState& pizza, const Hand& hand,
                            const Action& action, Seat seat,
                            JokerMode mode = JokerMode::kFaceZero);

// The cards a canonical play of (face, count) spends: matching faces by
// ascending uid, then (wild mode) Jokers by ascending uid. Absent when the
// hand cannot cover it.
std::optional<std::vector<CardUid>> CanonicalPlayCards(
    const Hand& hand, int face, int count,
    JokerMode mode = JokerMode::kFaceZero);

// All legal moves for `seat`, face descending, count ascending, Pass last.
std::vector<Action> LegalActions(const PizzaState& pizza, const Hand& hand,
                                 Seat seat,
                                 JokerMode mode = JokerMode::kFaceZero);

// Throws Error(kIllegalAction) unless ValidatePlay accepts the action. Does
// not move the turn; callers pick the next seat with NextToAct.
std::pair<PizzaState, Hand> ApplyPlay(const PizzaState& pizza,
                                      const Hand& hand, const Action& action,
                                      Seat seat,
                                      JokerMode mode = JokerMode::kFaceZero);
PizzaState ApplyPass(const PizzaState& pizza, Seat seat);

// `active` holds the seats that still have cards.
bool IsPizzaDone(const PizzaState& pizza, SeatSet active);

// Next seat after `previous` in ascending order mod 4 that is active and has
// not passed; `previous` itself is never returned.
std::optional<Seat> NextToAct(const PizzaState& pizza, SeatSet active,
                              Seat previous);

nlohmann::json ToJson(const Action& action);
// Accepts {"kind":"pass"} and {"kind":"play","face":F,"count":N,"cards":[..]};
// "cards" may be omitted when `hand` is given, in which case the canonical
// cards are filled in. Throws Error(kInvalidArgument).
Action ActionFromJson(const nlohmann::json& j, const Hand* hand = nullptr,
                      JokerMode mode = JokerMode::kFaceZero);

nlohmann::json ToJson(const PizzaState& pizza);

}  // namespace chefshat

#endif  // CHEFSHAT_RULES_HPP_
