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

#include <map>
#include <memory>

#include "chefshat/agents.hpp"
#include "chefshat/error.hpp"
#include "chefshat/simulator.hpp"
#include "gtest/gtest.h"

namespace chefshat {
namespace {

Action P(int face, int count) {
  std::vector<CardUid> cards;
  for (int i = 0; i < count; ++i) cards.push_back(i);  // placeholder uids
  return Action::Play(face, count, cards);
}

PlayerView ViewWith(std::vector<Action> legal) {
  PlayerView v;
  v.legal = std::move(legal);
  return v;
}

PlayerView ViewHolding(std::initializer_list<CardUid> uids) {
  PlayerView v;
  v.phase = ShiftPhase::kExchange;
  for (CardUid uid : uids) v.own_hand.push_back(CardFromUid(uid));
  return v;
}

TEST(RandomAgentTest, SingletonPass) {
  auto a = MakeRandomAgent(1);
  EXPECT_EQ(a->DecidePlay(ViewWith({Action::Pass()})), Action::Pass());
  EXPECT_EQ(a->name(), "random");
}

TEST(RandomAgentTest, SameSeedSameSequence) {
  auto a = MakeRandomAgent(77), b = MakeRandomAgent(77);
  const PlayerView v = ViewWith({P(9, 1), P(8, 1), P(3, 2), Action::Pass()});
  for (int i = 0; i < 200; ++i) EXPECT_EQ(a->DecidePlay(v), b->DecidePlay(v));
}

TEST(RandomAgentTest, UniformOverFourActions) {
  auto a = MakeRandomAgent(2026);
  const PlayerView v = ViewWith({P(9, 1), P(8, 1), P(3, 2), Action::Pass()});
  std::map<std::pair<int, int>, int> hits;
  constexpr int kDraws = 10000;
  for (int i = 0; i < kDraws; ++i) {
    const Action x = a->DecidePlay(v);
    ++hits[{x.is_pass() ? -1 : x.face, x.count}];
  }
  ASSERT_EQ(hits.size(), 4u);
  for (const auto& [key, n] : hits) {
    EXPECT_NEAR(n / static_cast<double>(kDraws), 0.25, 0.02);
  }
}

TEST(GreedyAgentTest, MaxCountThenHighestFace) {
  auto a = MakeGreedyAgent(0);
  EXPECT_EQ(a->DecidePlay(ViewWith({P(11, 2), P(5, 2), P(7, 1)})), P(11, 2));
  EXPECT_EQ(a->DecidePlay(ViewWith({Action::Pass()})), Action::Pass());
  EXPECT_EQ(a->DecidePlay(ViewWith({P(4, 1), Action::Pass()})), P(4, 1));
}

TEST(GreedyAgentTest, ReturnsHighestFacesAndTakesOnlyFoodFight) {
  auto a = MakeGreedyAgent(0);
  // Hand: 1, 3, 10, 11, Joker.
  const PlayerView v = ViewHolding({0, 3, 45, 55, 66});
  const std::vector<CardUid> received{55, 45};
  auto ret = a->DecideExchangeReturn(v, received, 2);
  std::sort(ret.begin(), ret.end());
  EXPECT_EQ(ret, (std::vector<CardUid>{45, 55}));
  EXPECT_TRUE(a->DecideSpecialAction(v, SpecialKind::kFoodFight));
  EXPECT_FALSE(a->DecideSpecialAction(v, SpecialKind::kDinnerIsServed));
}

TEST(ConservativeAgentTest, MinCountHighestFace) {
  auto a = MakeConservativeAgent(0);
  EXPECT_EQ(a->DecidePlay(ViewWith({P(11, 2), P(5, 2), P(7, 1)})), P(7, 1));
  EXPECT_EQ(a->DecidePlay(ViewWith({Action::Pass()})), Action::Pass());
}

TEST(ConservativeAgentTest, HoardsJokers) {
  auto a = MakeConservativeAgent(0);
  EXPECT_EQ(a->DecidePlay(ViewWith({P(9, 1), P(0, 1), Action::Pass()})),
            P(9, 1));
  EXPECT_EQ(a->DecidePlay(ViewWith({P(0, 1), Action::Pass()})), Action::Pass());
  // An opener holding only Jokers has to play one.
  EXPECT_EQ(a->DecidePlay(ViewWith({P(0, 1)})), P(0, 1));
}

TEST(AgentFactoryTest, KnownNames) {
  for (const char* name : {"random", "greedy", "conservative"}) {
    EXPECT_TRUE(IsKnownAgent(name));
    EXPECT_EQ(MakeAgent(name, 1)->name(), name);
  }
  EXPECT_FALSE(IsKnownAgent("oracle"));
  try {
    MakeAgent("oracle", 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidConfig);
  }
}

TEST(FallbackTest, PassWhenAllowedElseFirstPlay) {
  EXPECT_EQ(FallbackPlay({P(9, 1), Action::Pass()}), Action::Pass());
  EXPECT_EQ(FallbackPlay({P(9, 1), P(4, 2)}), P(9, 1));
  EXPECT_EQ(FallbackReturn(CardSet::FromUids({0, 45, 56, 66}), 2),
            (std::vector<CardUid>{56, 45}));
}

// Baseline agents never trigger a fault over seeded mixed matches.
TEST(AgentPropertyTest, ActionsStayWithinLegal) {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    const MatchResult r = RunMatch(
        RuleConfig{}, Lineup{"random", "greedy", "conservative", "random"}, seed);
    EXPECT_EQ(r.summary.faults, 0) << "seed " << seed;
  }
}

TEST(AgentPropertyTest, GreedyAndConservativeDiffer) {
  int differ = 0;
  constexpr int kMatches = 1000;
  for (int i = 0; i < kMatches; ++i) {
    const uint64_t seed = MatchSeed(31337, i);
    const auto g = RunMatch(RuleConfig{}, Lineup{"greedy", "greedy", "greedy", "greedy"}, seed);
    const auto c = RunMatch(RuleConfig{}, Lineup{"conservative", "conservative",
                                                 "conservative", "conservative"},
                            seed);
    if (ToJsonl(g.events) != ToJsonl(c.events)) ++differ;
  }
  EXPECT_GT(differ, kMatches * 99 / 100);
}

}  // namespace
}  // namespace chefshat
