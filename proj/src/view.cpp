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

#include "chefshat/view.hpp"

namespace chefshat {

using nlohmann::json;

Hand PlayerView::hand() const {
  Hand h;
  h.owner = seat;
  for (const Card& c : own_hand) h.cards.insert(c.uid);
  return h;
}

PlayerView MakeView(const MatchState& state, Seat seat,
                    std::span<const Event> public_history) {
  PlayerView v;
  v.seat = seat;
  v.own_hand = state.hands[seat].cards.cards();
  for (Seat s = 0; s < kNumSeats; ++s) {
    v.hand_sizes[s] = state.hands[s].cards.size();
  }
  v.pizza = state.pizza;
  v.roles = state.roles;
  v.scores = state.scores;
  v.shift_number = state.shift_number;
  v.phase = state.phase;
  v.finishing_order = state.finishing_order;
  v.special = state.special;
  v.joker_mode = state.rules.joker_mode;
  v.target_score = state.rules.target_score;
  v.public_history = public_history;
  if (!state.ended && state.phase == ShiftPhase::kMakingPizzas) {
    v.legal = LegalActions(state.pizza, state.hands[seat], seat,
                           state.rules.joker_mode);
  }
  return v;
}

json CardJson(const Card& card) {
  return {{"uid", card.uid}, {"face", card.face}, {"golden", card.golden}};
}

json CardsJson(const std::vector<CardUid>& uids) {
  json out = json::array();
  for (CardUid uid : uids) out.push_back(CardJson(CardFromUid(uid)));
  return out;
}

json ToJson(const PlayerView& v) {
  json hand = json::array();
  for (const Card& c : v.own_hand) hand.push_back(CardJson(c));
  json roles = nullptr;
  if (v.roles) {
    roles = json::array();
    for (RoleKind r : *v.roles) {
      roles.push_back({{"role", RoleName(r)},
                       {"attribute", AttributeName(AttributeOf(r))}});
    }
  }
  json legal = json::array();
  for (const Action& a : v.legal) legal.push_back(ToJson(a));
  json special = nullptr;
  if (v.special) {
    special = {{"kind", SpecialKindName(v.special->kind)},
               {"declarer", v.special->declarer}};
  }
  json pizza = ToJson(v.pizza);
  pizza["placed"] = CardsJson(v.pizza.placed);
  return {{"seat", v.seat},
          {"own_hand", hand},
          {"hand_sizes", v.hand_sizes},
          {"pizza", pizza},
          {"roles", roles},
          {"scores", v.scores},
          {"shift_number", v.shift_number},
          {"phase", PhaseName(v.phase)},
          {"finishing_order", v.finishing_order},
          {"special", special},
          {"target_score", v.target_score},
          {"joker_mode", v.joker_mode == JokerMode::kWild ? "wild" : "face0"},
          {"legal", legal}};
}

}  // namespace chefshat
