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

#include "chefshat/cards.hpp"

#include <string>

#include "chefshat/config.hpp"
#include "chefshat/error.hpp"

namespace chefshat {
namespace {

std::array<Card, kDeckSize> MakeCanonicalCards() {
  std::array<Card, kDeckSize> cards{};
  CardUid uid = 0;
  for (int face = 1; face <= kMaxFace; ++face) {
    for (int copy = 0; copy < face; ++copy, ++uid) {
      cards[uid] = Card{face, /*golden=*/false, uid};
    }
  }
  cards[kGoldenUid].golden = true;
  for (int j = 0; j < kNumJokers; ++j, ++uid) {
    cards[uid] = Card{kJokerFace, false, uid};
  }
  return cards;
}

const std::array<Card, kDeckSize>& CanonicalCards() {
  static const std::array<Card, kDeckSize> cards = MakeCanonicalCards();
  return cards;
}

std::array<CardSet, kMaxFace + 1> MakeFaceMasks() {
  std::array<CardSet, kMaxFace + 1> masks{};
  for (const Card& c : CanonicalCards()) masks[c.face].insert(c.uid);
  return masks;
}

}  // namespace

bool IsValidUid(CardUid uid) { return uid >= 0 && uid < kDeckSize; }

const Card& CardFromUid(CardUid uid) {
  if (!IsValidUid(uid)) {
    throw Error(ErrorCode::kInvalidArgument,
                "card uid out of range: " + std::to_string(uid));
  }
  return CanonicalCards()[uid];
}

int FaceOf(CardUid uid) { return CardFromUid(uid).face; }

CardSet CardSet::FromUids(const std::vector<CardUid>& uids) {
  CardSet set;
  for (CardUid uid : uids) {
    if (!IsValidUid(uid)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "card uid out of range: " + std::to_string(uid));
    }
    set.insert(uid);
  }
  return set;
}

CardSet CardSet::OfFace(int face) {
  static const auto masks = MakeFaceMasks();
  if (face < 0 || face > kMaxFace) return {};
  return masks[face];
}

CardSet CardSet::FullDeck() {
  return CardSet(~uint64_t{0}, (uint64_t{1} << (kDeckSize - 64)) - 1);
}

std::vector<CardUid> CardSet::uids() const {
  std::vector<CardUid> out;
  out.reserve(size());
  for (uint64_t w = lo_; w != 0; w &= w - 1) out.push_back(std::countr_zero(w));
  for (uint64_t w = hi_; w != 0; w &= w - 1) {
    out.push_back(64 + std::countr_zero(w));
  }
  return out;
}

std::vector<Card> CardSet::cards() const {
  std::vector<Card> out;
  out.reserve(size());
  for (CardUid uid : uids()) out.push_back(CanonicalCards()[uid]);
  return out;
}

Deck BuildDeck() {
  const auto& cards = CanonicalCards();
  return Deck{std::vector<Card>(cards.begin(), cards.end())};
}

Deck BuildDeck(const RuleConfig& config) {
  Validate(config);
  return BuildDeck();
}

std::array<Hand, kNumSeats> Deal(const Deck& deck, Xoshiro256& rng,
                                 int players) {
  if (players != kNumSeats) {
    throw Error(ErrorCode::kPlayerCountUnsupported,
                "only 4-player tables are supported, got " +
                    std::to_string(players));
  }
  std::vector<CardUid> order;
  order.reserve(deck.cards.size());
  for (const Card& c : deck.cards) order.push_back(c.uid);
  Shuffle(std::span<CardUid>(order), rng);

  std::array<Hand, kNumSeats> hands{};
  for (Seat s = 0; s < kNumSeats; ++s) hands[s].owner = s;
  for (size_t i = 0; i < order.size(); ++i) {
    hands[i % kNumSeats].cards.insert(order[i]);
  }
  return hands;
}

std::array<Hand, kNumSeats> Deal(const Deck& deck, uint64_t seed, int players) {
  Xoshiro256 rng(seed);
  return Deal(deck, rng, players);
}

}  // namespace chefshat
