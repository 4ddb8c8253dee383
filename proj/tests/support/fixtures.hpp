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

// Shared fixtures: the brute-force legality oracle and match states rigged
// for special actions. Used by the unit tests and the acceptance suite.

#ifndef CHEFSHAT_TESTS_SUPPORT_FIXTURES_HPP_
#define CHEFSHAT_TESTS_SUPPORT_FIXTURES_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "chefshat/match.hpp"
#include "chefshat/rng.hpp"
#include "chefshat/rules.hpp"

namespace chefshat::testing {

// Independent card picker: walks the hand in uid order.
std::optional<std::vector<CardUid>> OraclePick(const Hand& h, int face,
                                               int count, JokerMode mode);
// Every (face, count) of the lattice plus pass, filtered by ValidatePlay.
std::vector<Action> BruteForceLegal(const PizzaState& p, const Hand& h,
                                    Seat seat, JokerMode mode);

struct RandomPizzaState {
  PizzaState pizza;
  Hand hand;
  Seat seat;
  JokerMode mode;
};
RandomPizzaState GenerateState(Xoshiro256& rng);

// Plays the current shift out with the first legal action at every turn.
MatchState PlayShiftOut(MatchState s);
// A state right after shift 1 was scored: roles exist, no winner yet.
MatchState AfterFirstShift(uint64_t seed);
// Rewinds the RNG so the next deal hands both Jokers to the seat holding
// `role`.
MatchState WithJokerPair(MatchState s, RoleKind role);
// Rewinds the RNG so that no seat is dealt both Jokers.
MatchState WithoutJokerPair(MatchState s);

}  // namespace chefshat::testing

#endif  // CHEFSHAT_TESTS_SUPPORT_FIXTURES_HPP_
