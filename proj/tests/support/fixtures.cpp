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

#include "support/fixtures.hpp"

#include <algorithm>
#include <span>

#include "chefshat/cards.hpp"

namespace chefshat::testing {

std::optional<std::vector<CardUid>> OraclePick(const Hand& h, int face,
                                               int count, JokerMode mode) {
  std::vector<CardUid> naturals, jokers;
  for (CardUid uid = 0; uid < kDeckSize; ++uid) {
    if (!h.cards.contains(uid)) continue;
    const int f = CardFromUid(uid).face;
    if (f == face) naturals.push_back(uid);
    else if (f == 0 && mode == JokerMode::kWild && face != 0) jokers.push_back(uid);
  }
  if (naturals.empty()) return std::nullopt;
  naturals.insert(naturals.end(), jokers.begin(), jokers.end());
  if (static_cast<int>(naturals.size()) < count) return std::nullopt;
  naturals.resize(count);
  return naturals;
}

std::vector<Action> BruteForceLegal(const PizzaState& p, const Hand& h,
                                    Seat seat, JokerMode mode) {
  std::vector<Action> out;
  for (int face = 11; face >= 0; --face) {
    for (int count = 1; count <= 17; ++count) {
      auto cards = OraclePick(h, face, count, mode);
      if (!cards) continue;
      Action a = Action::Play(face, count, *cards);
      if (ValidatePlay(p, h, a, seat, mode).legal) out.push_back(a);
    }
  }
  if (ValidatePlay(p, h, Action::Pass(), seat, mode).legal) {
    out.push_back(Action::Pass());
  }
  return out;
}

RandomPizzaState GenerateState(Xoshiro256& rng) {
  RandomPizzaState st;
  st.seat = static_cast<Seat>(rng.Below(4));
  st.mode = rng.Below(4) == 0 ? JokerMode::kWild : JokerMode::kFaceZero;
  std::vector<CardUid> deck(kDeckSize);
  for (int i = 0; i < kDeckSize; ++i) deck[i] = i;
  Shuffle(std::span<CardUid>(deck), rng);
  const int hand_size = static_cast<int>(rng.Below(18));
  st.hand.owner = st.seat;
  for (int i = 0; i < hand_size; ++i) st.hand.cards.insert(deck[i]);

  PizzaState& p = st.pizza;
  p.opener = static_cast<Seat>(rng.Below(4));
  p.slots_used = static_cast<int>(rng.Below(12));
  if (p.slots_used > 0) {
    p.top_face = static_cast<int>(rng.Below(12));
    p.top_count = 1 + static_cast<int>(rng.Below(p.slots_used));
    p.last_player_to_play = static_cast<Seat>(rng.Below(4));
    for (int i = 0; i < p.slots_used; ++i) p.placed.push_back(deck[20 + i]);
  }
  for (Seat s = 0; s < kNumSeats; ++s) {
    if (rng.Below(5) == 0) p.passed.insert(s);
  }
  p.to_act = rng.Below(10) == 0 ? static_cast<Seat>(rng.Below(4)) : st.seat;
  return st;
}

MatchState PlayShiftOut(MatchState s) {
  while (s.phase == ShiftPhase::kMakingPizzas) {
    const Seat seat = *s.pizza.to_act;
    const auto legal =
        LegalActions(s.pizza, s.hands[seat], seat, s.rules.joker_mode);
    s = Step(s, seat, legal.front()).state;
  }
  return s;
}

MatchState AfterFirstShift(uint64_t seed) {
  MatchState s = PlayShiftOut(NewMatch(RuleConfig{}, seed).state);
  return EndShift(s).state;
}

MatchState WithJokerPair(MatchState s, RoleKind role) {
  const Seat target = *s.SeatWithRole(role);
  for (uint64_t k = 0;; ++k) {
    Xoshiro256 rng(k);
    const auto hands = Deal(BuildDeck(), rng);
    if (hands[target].cards.contains(66) && hands[target].cards.contains(67)) {
      s.rng_state = Xoshiro256(k).state();
      return s;
    }
  }
}

MatchState WithoutJokerPair(MatchState s) {
  for (uint64_t k = 0;; ++k) {
    Xoshiro256 rng(k);
    const auto hands = Deal(BuildDeck(), rng);
    const bool pair = std::any_of(hands.begin(), hands.end(), [](const Hand& h) {
      return h.cards.contains(66) && h.cards.contains(67);
    });
    if (!pair) {
      s.rng_state = Xoshiro256(k).state();
      return s;
    }
  }
}

}  // namespace chefshat::testing
