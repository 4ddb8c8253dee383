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

#ifndef CHEFSHAT_CARDS_HPP_
#define CHEFSHAT_CARDS_HPP_

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <vector>

#include "chefshat/rng.hpp"

namespace chefshat {

using Seat = int;
using CardUid = int;

inline constexpr int kNumSeats = 4;
inline constexpr int kMaxFace = 11;
inline constexpr int kJokerFace = 0;
inline constexpr int kNumJokers = 2;
inline constexpr int kNumIngredients = kMaxFace * (kMaxFace + 1) / 2;  // 66
inline constexpr int kDeckSize = kNumIngredients + kNumJokers;          // 68
inline constexpr int kHandSize = kDeckSize / kNumSeats;                  // 17
inline constexpr int kPizzaSlots = 11;
inline constexpr CardUid kGoldenUid = kNumIngredients - 1;

// Face 0 is a Joker; faces 1..11 are ingredients, lower is rarer.
struct Card {
  int face = 0;
  bool golden = false;
  CardUid uid = 0;

  bool is_joker() const { return face == kJokerFace; }
  friend auto operator<=>(const Card&, const Card&) = default;
};

// The uid of a card in the standard deck fixes its identity: uids follow the
// canonical deck order (face ascending, the golden 11 last among the 11s,
// Jokers last).
const Card& CardFromUid(CardUid uid);
int FaceOf(CardUid uid);
bool IsValidUid(CardUid uid);

// A set of card uids from one deck, stored as a 68-bit mask.
class CardSet {
 public:
  constexpr CardSet() = default;

  static CardSet FromUids(const std::vector<CardUid>& uids);
  static CardSet OfFace(int face);
  static CardSet FullDeck();

  void insert(CardUid uid) { word(uid) |= bit(uid); }
  void erase(CardUid uid) { word(uid) &= ~bit(uid); }
  bool contains(CardUid uid) const {
    return IsValidUid(uid) && (word(uid) & bit(uid)) != 0;
  }
  int size() const { return std::popcount(lo_) + std::popcount(hi_); }
  bool empty() const { return lo_ == 0 && hi_ == 0; }
  int CountFace(int face) const { return (*this & OfFace(face)).size(); }

  // Ascending uid order.
  std::vector<CardUid> uids() const;
  std::vector<Card> cards() const;

  CardSet operator|(const CardSet& o) const { return {lo_ | o.lo_, hi_ | o.hi_}; }
  CardSet operator&(const CardSet& o) const { return {lo_ & o.lo_, hi_ & o.hi_}; }
  CardSet operator-(const CardSet& o) const { return {lo_ & ~o.lo_, hi_ & ~o.hi_}; }
  CardSet& operator|=(const CardSet& o) { return *this = *this | o; }
  CardSet& operator-=(const CardSet& o) { return *this = *this - o; }
  bool Intersects(const CardSet& o) const { return !(*this & o).empty(); }
  friend bool operator==(const CardSet&, const CardSet&) = default;

 private:
  constexpr CardSet(uint64_t lo, uint64_t hi) : lo_(lo), hi_(hi) {}
  static uint64_t bit(CardUid uid) { return uint64_t{1} << (uid & 63); }
  uint64_t& word(CardUid uid) { return uid < 64 ? lo_ : hi_; }
  const uint64_t& word(CardUid uid) const { return uid < 64 ? lo_ : hi_; }

  uint64_t lo_ = 0;
  uint64_t hi_ = 0;
};

struct Deck {
  std::vector<Card> cards;
};

struct Hand {
  Seat owner = 0;
  CardSet cards;

  friend bool operator==(const Hand&, const Hand&) = default;
};

struct RuleConfig;

// The standard 68-card deck in canonical order: face N appears N times for N
// in 1..11, one of the 11s is golden, plus two Jokers.
Deck BuildDeck();
Deck BuildDeck(const RuleConfig& config);

// Shuffles a copy of `deck` with `rng` and deals it round-robin starting at
// seat 0. Only four players are supported.
std::array<Hand, kNumSeats> Deal(const Deck& deck, Xoshiro256& rng,
                                 int players = kNumSeats);
std::array<Hand, kNumSeats> Deal(const Deck& deck, uint64_t seed,
                                 int players = kNumSeats);

}  // namespace chefshat

#endif  // CHEFSHAT_CARDS_HPP_
