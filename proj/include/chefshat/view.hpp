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

#ifndef CHEFSHAT_VIEW_HPP_
#define CHEFSHAT_VIEW_HPP_

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "chefshat/match.hpp"
#include "json.hpp"

namespace chefshat {

// What one seat may know: its own hand plus public information. Built from
// the state, never from trust in the reader.
struct PlayerView {
  Seat seat = 0;
  std::vector<Card> own_hand;
  std::array<int, kNumSeats> hand_sizes{};
  PizzaState pizza;
  std::optional<RoleTable> roles;
  std::array<int, kNumSeats> scores{};
  int shift_number = 0;
  ShiftPhase phase = ShiftPhase::kMakingPizzas;
  std::vector<Seat> finishing_order;
  std::optional<SpecialAction> special;
  JokerMode joker_mode = JokerMode::kFaceZero;
  int target_score = 0;
  // Public events only.
  std::span<const Event> public_history;
  // LegalActions for this seat; empty unless it is this seat's turn to play.
  std::vector<Action> legal;

  Hand hand() const;
};

PlayerView MakeView(const MatchState& state, Seat seat,
                    std::span<const Event> public_history = {});

nlohmann::json CardJson(const Card& card);
nlohmann::json CardsJson(const std::vector<CardUid>& uids);
// Serializes everything except public_history.
nlohmann::json ToJson(const PlayerView& view);

}  // namespace chefshat

#endif  // CHEFSHAT_VIEW_HPP_
