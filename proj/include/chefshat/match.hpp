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

#ifndef CHEFSHAT_MATCH_HPP_
#define CHEFSHAT_MATCH_HPP_

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chefshat/cards.hpp"
#include "chefshat/config.hpp"
#include "chefshat/error.hpp"
#include "chefshat/events.hpp"
#include "chefshat/rng.hpp"
#include "chefshat/rules.hpp"
#include "json.hpp"

namespace chefshat {

enum class ShiftPhase {
  kSpecialActionWindow,
  kExchange,
  kMakingPizzas,
  kShiftEnded,
};

std::string_view PhaseName(ShiftPhase phase);

struct SpecialAction {
  SpecialKind kind = SpecialKind::kFoodFight;
  Seat declarer = 0;
  friend bool operator==(const SpecialAction&, const SpecialAction&) = default;
};

using RoleTable = std::array<RoleKind, kNumSeats>;

// Authoritative whole-match state. Every field is rebuilt by ApplyEvent, so a
// log replays to an identical value.
struct MatchState {
  RuleConfig rules;
  uint64_t seed = 0;
  int shift_number = 0;
  std::array<int, kNumSeats> scores{};
  // Roles in force this shift (inverted after a Food Fight).
  std::optional<RoleTable> roles;
  std::array<Hand, kNumSeats> hands{};
  PizzaState pizza;
  CardSet discard;
  std::vector<Seat> finishing_order;
  ShiftPhase phase = ShiftPhase::kShiftEnded;
  Xoshiro256::State rng_state{};
  std::optional<Seat> winner;
  bool ended = false;
  std::optional<EndReason> end_reason;
  int next_seq = 0;

  // Shift bookkeeping.
  std::optional<SpecialAction> special;
  std::array<CardSet, kNumSeats> received{};  // forced gives awaiting returns
  int exchange_returns = 0;
  int pizzas_in_shift = 0;
  std::optional<Seat> last_pizza_player;
  bool shift_scored = false;

  SeatSet active_seats() const;
  std::optional<Seat> SeatWithRole(RoleKind kind) const;
  friend bool operator==(const MatchState&, const MatchState&) = default;
};

nlohmann::json ToJson(const MatchState& state);
// Sorted-key compact JSON; equal states give equal strings.
std::string CanonicalString(const MatchState& state);

// Raised by step() for a rejected pizza move; carries the legality code.
class IllegalActionError : public Error {
 public:
  explicit IllegalActionError(LegalityReason reason)
      : Error(ErrorCode::kIllegalAction, std::string(ReasonName(reason))),
        reason_(reason) {}
  LegalityReason reason() const { return reason_; }

 private:
  LegalityReason reason_;
};

// Something the match is waiting on.
enum class DecisionKind { kPlay, kSpecialAction, kExchangeReturn };

struct Decision {
  DecisionKind kind = DecisionKind::kPlay;
  Seat seat = 0;
  SpecialKind offered = SpecialKind::kFoodFight;  // kSpecialAction only
  int count = 0;                                   // kExchangeReturn only
  std::vector<CardUid> received;                   // kExchangeReturn only
  friend bool operator==(const Decision&, const Decision&) = default;
};

// Empty when the match is over or an automatic transition (end_shift /
// start_shift) is due. An exchange yields two decisions, Chef first.
std::vector<Decision> PendingDecisions(const MatchState& state);
bool NeedsAdvance(const MatchState& state);

// The forced give of `count` cards: highest faces (or lowest) with Jokers
// ranked as face 0 and ties broken by lower uid.
std::vector<CardUid> ForcedGive(const CardSet& hand, int count, bool highest);
std::optional<Seat> HolderOf(const MatchState& state, CardUid uid);
// The seat holding both Jokers, if any.
std::optional<Seat> JokerPairHolder(const MatchState& state);

// Folds one event into the state. Throws Error(kCorruptLog) if the event does
// not follow from the state.
void ApplyEvent(MatchState& state, const Event& event);

// Rebuilds the state from a log that starts at MatchStarted.
MatchState Replay(std::span<const Event> events);

struct Transition {
  MatchState state;
  std::vector<Event> events;
};

// Pure transition functions; inputs are never modified.
Transition NewMatch(const RuleConfig& config, uint64_t seed);
Transition StartShift(const MatchState& state);
Transition ResolveSpecialAction(const MatchState& state,
                                const std::optional<SpecialAction>& declaration);
Transition PerformExchange(const MatchState& state,
                           const std::vector<CardUid>& chef_return,
                           CardUid souschef_return);
Transition Step(const MatchState& state, Seat seat, const Action& action);
Transition EndShift(const MatchState& state);

// Mutable match that owns its log; the pure functions above and the drivers
// are built on it.
class Match {
 public:
  // Called after every appended event with the post-event state.
  using Observer = std::function<void(const MatchState&, const Event&)>;

  static Match New(const RuleConfig& config, uint64_t seed,
                   Observer observer = {});

  const MatchState& state() const { return state_; }
  const std::vector<Event>& log() const { return log_; }
  const std::vector<Event>& public_log() const { return public_log_; }

  void StartShift();
  void ResolveSpecialAction(const std::optional<SpecialAction>& declaration);
  void PerformExchange(const std::vector<CardUid>& chef_return,
                       CardUid souschef_return);
  // `forced` marks a fallback move made on the seat's behalf.
  void Step(Seat seat, const Action& action, bool forced = false);
  void EndShift();
  void RecordFault(Seat seat, std::string decision, std::string reason);
  // Runs end_shift / start_shift until a decision is pending or the match
  // ends.
  void Advance();

  std::vector<Decision> Pending() const { return PendingDecisions(state_); }

  void set_observer(Observer observer) { observer_ = std::move(observer); }

 private:
  friend struct MatchAccess;
  Match() = default;
  void Emit(Payload payload, std::optional<Seat> private_to = std::nullopt);
  void OpenFirstPizza();
  void EmitForcedGives();

  MatchState state_;
  std::vector<Event> log_;
  std::vector<Event> public_log_;
  Observer observer_;
};

}  // namespace chefshat

#endif  // CHEFSHAT_MATCH_HPP_
