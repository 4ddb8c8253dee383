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

#include "chefshat/match.hpp"

#include <algorithm>
#include <utility>

namespace chefshat {
namespace {

using nlohmann::json;

[[noreturn]] void Corrupt(const std::string& what) {
  throw Error(ErrorCode::kCorruptLog, what);
}

void Expect(bool cond, const char* what) {
  if (!cond) Corrupt(what);
}

CardSet JokerMask() { return CardSet::OfFace(kJokerFace); }

RoleTable RolesFromFinishingOrder(const std::vector<Seat>& order) {
  RoleTable roles{};
  for (size_t i = 0; i < order.size(); ++i) {
    roles[order[i]] = static_cast<RoleKind>(i);
  }
  return roles;
}

// Highest score wins; equal scores go to the better role earned this shift.
// A Food Fight inverts the hierarchy for the whole shift, tie-break included.
Seat DecideWinner(const MatchState& s) {
  const bool inverted =
      s.special && s.special->kind == SpecialKind::kFoodFight;
  auto rank = [&](Seat seat) {
    if (!s.roles) return 0;
    const RoleKind r = (*s.roles)[seat];
    return static_cast<int>(inverted ? Inverted(r) : r);
  };
  Seat best = 0;
  for (Seat seat = 1; seat < kNumSeats; ++seat) {
    if (s.scores[seat] > s.scores[best] ||
        (s.scores[seat] == s.scores[best] && rank(seat) < rank(best))) {
      best = seat;
    }
  }
  return best;
}

std::optional<EndReason> MatchOutcome(const MatchState& s) {
  const int top = *std::max_element(s.scores.begin(), s.scores.end());
  if (top >= s.rules.target_score) return EndReason::kTarget;
  if (s.shift_number >= s.rules.max_shifts) return EndReason::kCutoff;
  return std::nullopt;
}

// Next pizza: the last seat to play opens, or the next seat with cards
// after it.
Seat NextOpener(const MatchState& s) {
  const Seat last = s.last_pizza_player.value_or(0);
  if (!s.hands[last].cards.empty()) return last;
  PizzaState none;
  return NextToAct(none, s.active_seats(), last).value_or(last);
}

Seat ExpectedOpener(const MatchState& s) {
  if (s.pizzas_in_shift == 0) return HolderOf(s, kGoldenUid).value_or(0);
  return NextOpener(s);
}

void CheckConservation(const MatchState& s) {
  if (s.shift_number < 1) return;
  CardSet all = s.discard;
  int total = s.discard.size();
  for (const Hand& h : s.hands) {
    all |= h.cards;
    total += h.cards.size();
  }
  for (CardUid uid : s.pizza.placed) all.insert(uid);
  total += static_cast<int>(s.pizza.placed.size());
  Expect(total == kDeckSize && all == CardSet::FullDeck(),
         "card conservation violated");
  Expect(s.pizza.slots_used <= kPizzaSlots, "pizza over capacity");
}

void MoveCards(MatchState& s, Seat from, Seat to,
               const std::vector<CardUid>& cards) {
  for (CardUid uid : cards) {
    Expect(s.hands[from].cards.contains(uid), "exchanged card not held");
    s.hands[from].cards.erase(uid);
    s.hands[to].cards.insert(uid);
  }
}

void RecomputeToAct(MatchState& s, Seat previous) {
  s.pizza.to_act = NextToAct(s.pizza, s.active_seats(), previous);
}

void ApplyEventImpl(MatchState& s, const Event& e) {
  Expect(e.seq == s.next_seq, "sequence gap");
  if (e.kind() != EventKind::kMatchStarted) {
    Expect(s.next_seq > 0, "log must start with MatchStarted");
    Expect(!s.ended, "event after MatchEnded");
  }
  const JokerMode mode = s.rules.joker_mode;

  switch (e.kind()) {
    case EventKind::kMatchStarted: {
      const auto& p = *e.as<payload::MatchStarted>();
      Expect(e.seq == 0 && e.shift == 0, "MatchStarted must be first");
      Expect(e.is_public(), "MatchStarted must be public");
      MatchState fresh;
      fresh.rules = p.rules;
      fresh.seed = p.seed;
      fresh.rng_state = Xoshiro256(p.seed).state();
      fresh.shift_scored = true;
      s = std::move(fresh);
      break;
    }
    case EventKind::kShiftStarted: {
      const auto& p = *e.as<payload::ShiftStarted>();
      Expect(s.phase == ShiftPhase::kShiftEnded && s.shift_scored,
             "ShiftStarted before the previous shift was scored");
      Expect(p.shift == s.shift_number + 1 && e.shift == p.shift,
             "ShiftStarted numbering");
      Expect(e.is_public(), "ShiftStarted must be public");
      s.shift_number = p.shift;
      Xoshiro256 rng(s.rng_state);
      s.hands = Deal(BuildDeck(), rng);
      s.rng_state = rng.state();
      s.pizza = PizzaState{};
      s.pizza.to_act.reset();
      s.discard = CardSet{};
      s.finishing_order.clear();
      s.special.reset();
      s.received = {};
      s.exchange_returns = 0;
      s.pizzas_in_shift = 0;
      s.last_pizza_player.reset();
      s.shift_scored = false;
      s.phase = s.shift_number == 1 ? ShiftPhase::kMakingPizzas
                                    : ShiftPhase::kSpecialActionWindow;
      break;
    }
    default:
      Expect(e.shift == s.shift_number, "event shift mismatch");
      break;
  }

  switch (e.kind()) {
    case EventKind::kMatchStarted:
    case EventKind::kShiftStarted:
      break;
    case EventKind::kDealt: {
      const auto& p = *e.as<payload::Dealt>();
      Expect(e.private_to == p.seat, "Dealt must be private to its seat");
      Expect(p.cards == s.hands[p.seat].cards.uids(),
             "Dealt hand differs from the seeded deal");
      break;
    }
    case EventKind::kSpecialActionDeclared: {
      const auto& p = *e.as<payload::SpecialActionDeclared>();
      Expect(e.is_public(), "special actions are public");
      Expect(s.phase == ShiftPhase::kSpecialActionWindow && !s.special,
             "special action outside its window");
      Expect((s.hands[p.seat].cards & JokerMask()) == JokerMask(),
             "declarer does not hold both Jokers");
      const bool dishwasher = (*s.roles)[p.seat] == RoleKind::kDishwasher;
      Expect(dishwasher == (p.kind == SpecialKind::kFoodFight),
             "special action does not match the declarer's role");
      s.special = SpecialAction{p.kind, p.seat};
      if (p.kind == SpecialKind::kFoodFight) {
        for (RoleKind& r : *s.roles) r = Inverted(r);
      }
      break;
    }
    case EventKind::kExchangeForced: {
      const auto& p = *e.as<payload::ExchangeForced>();
      Expect(e.private_to == p.from, "ExchangeForced must be private to giver");
      Expect(s.phase == ShiftPhase::kSpecialActionWindow ||
                 s.phase == ShiftPhase::kExchange,
             "ExchangeForced out of phase");
      Expect(s.roles.has_value() &&
                 !(s.special &&
                   s.special->kind == SpecialKind::kDinnerIsServed),
             "no exchange this shift");
      const RoleTable& roles = *s.roles;
      const bool dish_to_chef = roles[p.from] == RoleKind::kDishwasher &&
                                roles[p.to] == RoleKind::kChef;
      const bool waiter_to_sous = roles[p.from] == RoleKind::kWaiter &&
                                  roles[p.to] == RoleKind::kSousChef;
      Expect(dish_to_chef || waiter_to_sous, "ExchangeForced between wrong roles");
      Expect(s.received[p.to].empty(), "duplicate ExchangeForced");
      const bool highest =
          dish_to_chef && s.rules.dishwasher_gives == DishwasherGives::kHighest;
      Expect(p.cards == ForcedGive(s.hands[p.from].cards, dish_to_chef ? 2 : 1,
                                   highest),
             "forced give differs from the rule");
      MoveCards(s, p.from, p.to, p.cards);
      s.received[p.to] = CardSet::FromUids(p.cards);
      s.phase = ShiftPhase::kExchange;
      break;
    }
    case EventKind::kExchangeReturned: {
      const auto& p = *e.as<payload::ExchangeReturned>();
      Expect(e.private_to == p.from, "ExchangeReturned must be private to giver");
      Expect(s.phase == ShiftPhase::kExchange && s.roles, "return out of phase");
      const RoleTable& roles = *s.roles;
      const bool chef = roles[p.from] == RoleKind::kChef &&
                        roles[p.to] == RoleKind::kDishwasher;
      const bool sous = roles[p.from] == RoleKind::kSousChef &&
                        roles[p.to] == RoleKind::kWaiter;
      Expect(chef || sous, "ExchangeReturned between wrong roles");
      Expect(!s.received[p.from].empty(), "duplicate ExchangeReturned");
      Expect(p.cards.size() == (chef ? 2u : 1u) &&
                 CardSet::FromUids(p.cards).size() ==
                     static_cast<int>(p.cards.size()),
             "wrong number of returned cards");
      MoveCards(s, p.from, p.to, p.cards);
      s.received[p.from] = CardSet{};
      ++s.exchange_returns;
      break;
    }
    case EventKind::kPizzaOpened: {
      const auto& p = *e.as<payload::PizzaOpened>();
      Expect(e.is_public(), "PizzaOpened must be public");
      Expect(s.pizza.empty() && !s.pizza.to_act, "pizza already open");
      const bool exchange_done =
          s.phase == ShiftPhase::kExchange && s.exchange_returns == 2;
      const bool dinner = s.phase == ShiftPhase::kSpecialActionWindow &&
                          s.special &&
                          s.special->kind == SpecialKind::kDinnerIsServed;
      Expect(exchange_done || dinner || s.phase == ShiftPhase::kMakingPizzas,
             "PizzaOpened out of phase");
      Expect(p.opener == ExpectedOpener(s), "wrong pizza opener");
      Expect(!s.hands[p.opener].cards.empty(), "opener has no cards");
      s.pizza = PizzaState::OpenedBy(p.opener);
      s.phase = ShiftPhase::kMakingPizzas;
      break;
    }
    case EventKind::kCardsPlayed: {
      const auto& p = *e.as<payload::CardsPlayed>();
      Expect(e.is_public(), "plays are public");
      Expect(s.phase == ShiftPhase::kMakingPizzas, "play out of phase");
      const Action a = Action::Play(p.face, p.count, p.cards);
      Expect(ValidatePlay(s.pizza, s.hands[p.seat], a, p.seat, mode).legal,
             "illegal play in log");
      auto [pizza, hand] = ApplyPlay(s.pizza, s.hands[p.seat], a, p.seat, mode);
      s.pizza = std::move(pizza);
      s.hands[p.seat] = hand;
      RecomputeToAct(s, p.seat);
      break;
    }
    case EventKind::kPassed: {
      const auto& p = *e.as<payload::Passed>();
      Expect(e.is_public(), "passes are public");
      Expect(s.phase == ShiftPhase::kMakingPizzas, "pass out of phase");
      Expect(ValidatePlay(s.pizza, s.hands[p.seat], Action::Pass(), p.seat, mode)
                 .legal,
             "illegal pass in log");
      s.pizza = ApplyPass(s.pizza, p.seat);
      RecomputeToAct(s, p.seat);
      break;
    }
    case EventKind::kPizzaDone: {
      const auto& p = *e.as<payload::PizzaDone>();
      Expect(e.is_public(), "PizzaDone must be public");
      Expect(s.phase == ShiftPhase::kMakingPizzas && !s.pizza.empty(),
             "PizzaDone without a pizza");
      Expect(s.finishing_order.size() == kNumSeats ||
                 IsPizzaDone(s.pizza, s.active_seats()),
             "PizzaDone while the pizza can continue");
      Expect(p.cards == s.pizza.placed &&
                 p.last_player == s.pizza.last_player_to_play,
             "PizzaDone payload differs from the board");
      for (CardUid uid : s.pizza.placed) s.discard.insert(uid);
      s.last_pizza_player = s.pizza.last_player_to_play;
      s.pizza = PizzaState{};
      s.pizza.to_act.reset();
      ++s.pizzas_in_shift;
      break;
    }
    case EventKind::kPlayerFinished: {
      const auto& p = *e.as<payload::PlayerFinished>();
      Expect(e.is_public(), "PlayerFinished must be public");
      Expect(s.phase == ShiftPhase::kMakingPizzas, "finish out of phase");
      Expect(p.position == static_cast<int>(s.finishing_order.size()) + 1,
             "finishing position out of order");
      Expect(std::find(s.finishing_order.begin(), s.finishing_order.end(),
                       p.seat) == s.finishing_order.end(),
             "seat finished twice");
      if (p.position < kNumSeats) {
        Expect(s.hands[p.seat].cards.empty(), "finished seat still has cards");
      }
      s.finishing_order.push_back(p.seat);
      break;
    }
    case EventKind::kShiftEnded: {
      const auto& p = *e.as<payload::ShiftEnded>();
      Expect(e.is_public(), "ShiftEnded must be public");
      Expect(s.phase == ShiftPhase::kMakingPizzas &&
                 s.finishing_order.size() == kNumSeats &&
                 p.finishing_order == s.finishing_order && s.pizza.empty(),
             "ShiftEnded before the shift is over");
      s.phase = ShiftPhase::kShiftEnded;
      s.pizza.to_act.reset();
      break;
    }
    case EventKind::kRolesAssigned: {
      const auto& p = *e.as<payload::RolesAssigned>();
      Expect(e.is_public(), "RolesAssigned must be public");
      Expect(s.phase == ShiftPhase::kShiftEnded && !s.shift_scored,
             "RolesAssigned out of phase");
      Expect(p.roles == RolesFromFinishingOrder(s.finishing_order),
             "roles differ from finishing order");
      s.roles = p.roles;
      break;
    }
    case EventKind::kScoresUpdated: {
      const auto& p = *e.as<payload::ScoresUpdated>();
      Expect(e.is_public(), "ScoresUpdated must be public");
      Expect(s.phase == ShiftPhase::kShiftEnded && !s.shift_scored && s.roles &&
                 *s.roles == RolesFromFinishingOrder(s.finishing_order),
             "ScoresUpdated before roles");
      for (Seat seat = 0; seat < kNumSeats; ++seat) {
        const int delta =
            s.rules.role_points[static_cast<int>((*s.roles)[seat])];
        Expect(p.deltas[seat] == delta &&
                   p.scores[seat] == s.scores[seat] + delta,
               "score ledger mismatch");
      }
      s.scores = p.scores;
      s.shift_scored = true;
      break;
    }
    case EventKind::kMatchEnded: {
      const auto& p = *e.as<payload::MatchEnded>();
      Expect(e.is_public(), "MatchEnded must be public");
      Expect(s.phase == ShiftPhase::kShiftEnded && s.shift_scored,
             "MatchEnded mid-shift");
      const auto outcome = MatchOutcome(s);
      Expect(outcome == p.reason && p.winner == DecideWinner(s) &&
                 p.scores == s.scores,
             "MatchEnded differs from the scores");
      s.ended = true;
      s.winner = p.winner;
      s.end_reason = p.reason;
      break;
    }
    case EventKind::kAgentFault:
      Expect(e.is_public(), "AgentFault must be public");
      break;
  }
  CheckConservation(s);
  ++s.next_seq;
}

nlohmann::json OptInt(const std::optional<int>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

std::string_view PhaseName(ShiftPhase phase) {
  switch (phase) {
    case ShiftPhase::kSpecialActionWindow: return "SpecialActionWindow";
    case ShiftPhase::kExchange: return "Exchange";
    case ShiftPhase::kMakingPizzas: return "MakingPizzas";
    case ShiftPhase::kShiftEnded: return "ShiftEnded";
  }
  return "Unknown";
}

SeatSet MatchState::active_seats() const {
  SeatSet active;
  for (Seat s = 0; s < kNumSeats; ++s) {
    if (!hands[s].cards.empty()) active.insert(s);
  }
  return active;
}

std::optional<Seat> MatchState::SeatWithRole(RoleKind kind) const {
  if (!roles) return std::nullopt;
  for (Seat s = 0; s < kNumSeats; ++s) {
    if ((*roles)[s] == kind) return s;
  }
  return std::nullopt;
}

json ToJson(const MatchState& s) {
  json hands = json::array();
  json received = json::array();
  for (Seat seat = 0; seat < kNumSeats; ++seat) {
    hands.push_back(s.hands[seat].cards.uids());
    received.push_back(s.received[seat].uids());
  }
  json roles = nullptr;
  if (s.roles) {
    roles = json::array();
    for (RoleKind r : *s.roles) roles.push_back(RoleName(r));
  }
  json special = nullptr;
  if (s.special) {
    special = {{"kind", SpecialKindName(s.special->kind)},
               {"declarer", s.special->declarer}};
  }
  return {{"rules", ToJson(s.rules)},
          {"seed", s.seed},
          {"shift_number", s.shift_number},
          {"scores", s.scores},
          {"roles", roles},
          {"hands", hands},
          {"pizza", ToJson(s.pizza)},
          {"discard", s.discard.uids()},
          {"finishing_order", s.finishing_order},
          {"phase", PhaseName(s.phase)},
          {"rng_state", s.rng_state},
          {"winner", OptInt(s.winner)},
          {"ended", s.ended},
          {"end_reason", s.end_reason ? json(EndReasonName(*s.end_reason))
                                      : json(nullptr)},
          {"next_seq", s.next_seq},
          {"special", special},
          {"received", received},
          {"exchange_returns", s.exchange_returns},
          {"pizzas_in_shift", s.pizzas_in_shift},
          {"last_pizza_player", OptInt(s.last_pizza_player)},
          {"shift_scored", s.shift_scored}};
}

std::string CanonicalString(const MatchState& state) {
  return ToJson(state).dump();
}

std::vector<CardUid> ForcedGive(const CardSet& hand, int count, bool highest) {
  std::vector<CardUid> uids = hand.uids();
  std::stable_sort(uids.begin(), uids.end(), [highest](CardUid a, CardUid b) {
    return highest ? FaceOf(a) > FaceOf(b) : FaceOf(a) < FaceOf(b);
  });
  if (static_cast<int>(uids.size()) > count) uids.resize(count);
  return uids;
}

std::optional<Seat> HolderOf(const MatchState& state, CardUid uid) {
  for (Seat s = 0; s < kNumSeats; ++s) {
    if (state.hands[s].cards.contains(uid)) return s;
  }
  return std::nullopt;
}

std::optional<Seat> JokerPairHolder(const MatchState& state) {
  for (Seat s = 0; s < kNumSeats; ++s) {
    if ((state.hands[s].cards & JokerMask()) == JokerMask()) return s;
  }
  return std::nullopt;
}

std::vector<Decision> PendingDecisions(const MatchState& s) {
  std::vector<Decision> out;
  if (s.ended || s.next_seq == 0) return out;
  switch (s.phase) {
    case ShiftPhase::kShiftEnded:
      break;
    case ShiftPhase::kSpecialActionWindow: {
      if (s.special) break;
      const auto holder = JokerPairHolder(s);
      if (!holder || !s.roles) break;
      Decision d;
      d.kind = DecisionKind::kSpecialAction;
      d.seat = *holder;
      d.offered = (*s.roles)[*holder] == RoleKind::kDishwasher
                      ? SpecialKind::kFoodFight
                      : SpecialKind::kDinnerIsServed;
      out.push_back(d);
      break;
    }
    case ShiftPhase::kExchange: {
      for (RoleKind kind : {RoleKind::kChef, RoleKind::kSousChef}) {
        const auto seat = s.SeatWithRole(kind);
        if (!seat || s.received[*seat].empty()) continue;
        Decision d;
        d.kind = DecisionKind::kExchangeReturn;
        d.seat = *seat;
        d.count = kind == RoleKind::kChef ? 2 : 1;
        d.received = s.received[*seat].uids();
        out.push_back(std::move(d));
      }
      break;
    }
    case ShiftPhase::kMakingPizzas:
      if (s.pizza.to_act) {
        Decision d;
        d.kind = DecisionKind::kPlay;
        d.seat = *s.pizza.to_act;
        out.push_back(d);
      }
      break;
  }
  return out;
}

bool NeedsAdvance(const MatchState& s) {
  return !s.ended && s.next_seq > 0 && s.phase == ShiftPhase::kShiftEnded;
}

void ApplyEvent(MatchState& state, const Event& event) {
  try {
    ApplyEventImpl(state, event);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kCorruptLog) throw;
    throw Error(ErrorCode::kCorruptLog,
                "event " + std::to_string(event.seq) + ": " + e.what());
  }
}

MatchState Replay(std::span<const Event> events) {
  if (events.empty() || events.front().kind() != EventKind::kMatchStarted) {
    Corrupt("log must start with MatchStarted");
  }
  MatchState state;
  for (const Event& e : events) ApplyEvent(state, e);
  return state;
}

// --- Match ----------------------------------------------------------------

struct MatchAccess {
  static Match From(const MatchState& state) {
    Match m;
    m.state_ = state;
    return m;
  }
  static Transition Take(Match& m) {
    return Transition{std::move(m.state_), std::move(m.log_)};
  }
};

void Match::Emit(Payload payload, std::optional<Seat> private_to) {
  Event e;
  e.seq = state_.next_seq;
  if (const auto* p = std::get_if<payload::ShiftStarted>(&payload)) {
    e.shift = p->shift;
  } else if (std::holds_alternative<payload::MatchStarted>(payload)) {
    e.shift = 0;
  } else {
    e.shift = state_.shift_number;
  }
  e.payload = std::move(payload);
  e.private_to = private_to;
  ApplyEvent(state_, e);
  if (e.is_public()) public_log_.push_back(e);
  log_.push_back(std::move(e));
  if (observer_) observer_(state_, log_.back());
}

Match Match::New(const RuleConfig& config, uint64_t seed, Observer observer) {
  Validate(config);
  Match m;
  m.observer_ = std::move(observer);
  m.Emit(payload::MatchStarted{config, seed});
  m.StartShift();
  return m;
}

void Match::OpenFirstPizza() {
  Emit(payload::PizzaOpened{HolderOf(state_, kGoldenUid).value_or(0)});
}

void Match::EmitForcedGives() {
  const RoleTable& roles = *state_.roles;
  auto seat_of = [&roles](RoleKind k) {
    return static_cast<Seat>(std::find(roles.begin(), roles.end(), k) -
                             roles.begin());
  };
  const Seat chef = seat_of(RoleKind::kChef);
  const Seat sous = seat_of(RoleKind::kSousChef);
  const Seat waiter = seat_of(RoleKind::kWaiter);
  const Seat dish = seat_of(RoleKind::kDishwasher);
  const bool highest =
      state_.rules.dishwasher_gives == DishwasherGives::kHighest;
  Emit(payload::ExchangeForced{dish, chef,
                               ForcedGive(state_.hands[dish].cards, 2, highest)},
       dish);
  Emit(payload::ExchangeForced{waiter, sous,
                               ForcedGive(state_.hands[waiter].cards, 1, false)},
       waiter);
}

void Match::StartShift() {
  if (state_.ended) {
    throw Error(ErrorCode::kMatchAlreadyOver, "the match has ended");
  }
  if (state_.phase != ShiftPhase::kShiftEnded || !state_.shift_scored) {
    throw Error(ErrorCode::kWrongPhase, "the current shift is not over");
  }
  Emit(payload::ShiftStarted{state_.shift_number + 1});
  for (Seat s = 0; s < kNumSeats; ++s) {
    Emit(payload::Dealt{s, state_.hands[s].cards.uids()}, s);
  }
  if (state_.shift_number == 1) {
    OpenFirstPizza();
  } else if (!JokerPairHolder(state_)) {
    EmitForcedGives();
  }
}

void Match::ResolveSpecialAction(
    const std::optional<SpecialAction>& declaration) {
  if (state_.ended) {
    throw Error(ErrorCode::kMatchAlreadyOver, "the match has ended");
  }
  if (state_.phase != ShiftPhase::kSpecialActionWindow || state_.special) {
    throw Error(ErrorCode::kWrongPhase, "no special-action window is open");
  }
  if (!declaration) {
    EmitForcedGives();
    return;
  }
  const Seat seat = declaration->declarer;
  if (seat < 0 || seat >= kNumSeats ||
      (state_.hands[seat].cards & JokerMask()) != JokerMask()) {
    throw Error(ErrorCode::kInvalidDeclaration,
                "declarer does not hold both Jokers");
  }
  const bool dishwasher = (*state_.roles)[seat] == RoleKind::kDishwasher;
  if (dishwasher != (declaration->kind == SpecialKind::kFoodFight)) {
    throw Error(ErrorCode::kInvalidDeclaration,
                "Food Fight is the Dishwasher's action; Dinner is served "
                "belongs to the other roles");
  }
  Emit(payload::SpecialActionDeclared{seat, declaration->kind});
  if (declaration->kind == SpecialKind::kFoodFight) {
    EmitForcedGives();
  } else {
    OpenFirstPizza();
  }
}

void Match::PerformExchange(const std::vector<CardUid>& chef_return,
                            CardUid souschef_return) {
  if (state_.ended) {
    throw Error(ErrorCode::kMatchAlreadyOver, "the match has ended");
  }
  if (state_.phase != ShiftPhase::kExchange || state_.exchange_returns != 0) {
    throw Error(ErrorCode::kWrongPhase, "no exchange is pending");
  }
  const Seat chef = *state_.SeatWithRole(RoleKind::kChef);
  const Seat sous = *state_.SeatWithRole(RoleKind::kSousChef);
  const Seat dish = *state_.SeatWithRole(RoleKind::kDishwasher);
  const Seat waiter = *state_.SeatWithRole(RoleKind::kWaiter);
  if (chef_return.size() != 2 || chef_return[0] == chef_return[1] ||
      !state_.hands[chef].cards.contains(chef_return[0]) ||
      !state_.hands[chef].cards.contains(chef_return[1])) {
    throw Error(ErrorCode::kCardsNotHeld,
                "the Chef must return two distinct held cards");
  }
  if (!state_.hands[sous].cards.contains(souschef_return)) {
    throw Error(ErrorCode::kCardsNotHeld,
                "the Sous-Chef must return one held card");
  }
  Emit(payload::ExchangeReturned{chef, dish, chef_return}, chef);
  Emit(payload::ExchangeReturned{sous, waiter, {souschef_return}}, sous);
  OpenFirstPizza();
}

void Match::Step(Seat seat, const Action& action, bool forced) {
  if (state_.ended) {
    throw Error(ErrorCode::kMatchAlreadyOver, "the match has ended");
  }
  if (state_.phase != ShiftPhase::kMakingPizzas) {
    throw Error(ErrorCode::kWrongPhase, "pizzas are not being made");
  }
  if (seat < 0 || seat >= kNumSeats) {
    throw IllegalActionError(LegalityReason::kNotYourTurn);
  }
  const LegalityResult check = ValidatePlay(
      state_.pizza, state_.hands[seat], action, seat, state_.rules.joker_mode);
  if (!check.legal) throw IllegalActionError(check.reason);

  if (action.is_pass()) {
    Emit(payload::Passed{seat, forced});
  } else {
    Emit(payload::CardsPlayed{seat, action.face, action.count, action.cards,
                              forced});
    if (state_.hands[seat].cards.empty()) {
      Emit(payload::PlayerFinished{
          seat, static_cast<int>(state_.finishing_order.size()) + 1});
      if (state_.finishing_order.size() == kNumSeats - 1) {
        Seat last = 0;
        while (std::find(state_.finishing_order.begin(),
                         state_.finishing_order.end(),
                         last) != state_.finishing_order.end()) {
          ++last;
        }
        Emit(payload::PlayerFinished{last, kNumSeats});
        Emit(payload::PizzaDone{state_.pizza.placed,
                                state_.pizza.last_player_to_play});
        Emit(payload::ShiftEnded{state_.finishing_order});
        return;
      }
    }
  }
  if (IsPizzaDone(state_.pizza, state_.active_seats())) {
    Emit(payload::PizzaDone{state_.pizza.placed,
                            state_.pizza.last_player_to_play});
    Emit(payload::PizzaOpened{NextOpener(state_)});
  }
}

void Match::EndShift() {
  if (state_.ended) {
    throw Error(ErrorCode::kMatchAlreadyOver, "the match has ended");
  }
  if (state_.phase != ShiftPhase::kShiftEnded || state_.shift_scored ||
      state_.finishing_order.size() != kNumSeats) {
    throw Error(ErrorCode::kWrongPhase, "the shift has not finished");
  }
  const RoleTable roles = RolesFromFinishingOrder(state_.finishing_order);
  Emit(payload::RolesAssigned{roles});
  payload::ScoresUpdated update;
  for (Seat s = 0; s < kNumSeats; ++s) {
    update.deltas[s] = state_.rules.role_points[static_cast<int>(roles[s])];
    update.scores[s] = state_.scores[s] + update.deltas[s];
  }
  Emit(update);
  if (const auto outcome = MatchOutcome(state_)) {
    Emit(payload::MatchEnded{DecideWinner(state_), *outcome, state_.scores});
  }
}

void Match::RecordFault(Seat seat, std::string decision, std::string reason) {
  Emit(payload::AgentFault{seat, std::move(decision), std::move(reason)});
}

void Match::Advance() {
  while (NeedsAdvance(state_)) {
    if (!state_.shift_scored) {
      EndShift();
    } else {
      StartShift();
    }
  }
}

// --- pure wrappers ----------------------------------------------------------

Transition NewMatch(const RuleConfig& config, uint64_t seed) {
  Match m = Match::New(config, seed);
  return MatchAccess::Take(m);
}

Transition StartShift(const MatchState& state) {
  Match m = MatchAccess::From(state);
  m.StartShift();
  return MatchAccess::Take(m);
}

Transition ResolveSpecialAction(const MatchState& state,
                                const std::optional<SpecialAction>& declaration) {
  Match m = MatchAccess::From(state);
  m.ResolveSpecialAction(declaration);
  return MatchAccess::Take(m);
}

Transition PerformExchange(const MatchState& state,
                           const std::vector<CardUid>& chef_return,
                           CardUid souschef_return) {
  Match m = MatchAccess::From(state);
  m.PerformExchange(chef_return, souschef_return);
  return MatchAccess::Take(m);
}

Transition Step(const MatchState& state, Seat seat, const Action& action) {
  Match m = MatchAccess::From(state);
  m.Step(seat, action);
  return MatchAccess::Take(m);
}

Transition EndShift(const MatchState& state) {
  Match m = MatchAccess::From(state);
  m.EndShift();
  return MatchAccess::Take(m);
}

}  // namespace chefshat
