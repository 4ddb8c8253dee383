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

#include <gtest/gtest.h>

#include <memory>
#include <random>
#include <string>

#include "chefshat/chefshat.h"
#include "json.hpp"

namespace {

using nlohmann::json;

struct StrFree {
  void operator()(char* s) const { chefshat_string_free(s); }
};
using Str = std::unique_ptr<char, StrFree>;

struct MatchFree {
  void operator()(chefshat_match* m) const { chefshat_match_free(m); }
};
using MatchPtr = std::unique_ptr<chefshat_match, MatchFree>;

// `raw` is read after the call has filled it in.
json Take(chefshat_status st, char** raw) {
  Str s(*raw);
  *raw = nullptr;
  EXPECT_EQ(st, CHEFSHAT_OK) << chefshat_last_error();
  return s ? json::parse(s.get()) : json();
}

MatchPtr NewMatch(const char* rules, uint64_t seed) {
  chefshat_match* m = nullptr;
  EXPECT_EQ(chefshat_match_new(rules, seed, &m), CHEFSHAT_OK) << chefshat_last_error();
  return MatchPtr(m);
}

// Drives every seat with uniform random choices until the match ends.
int PlayOut(chefshat_match* m, uint64_t seed) {
  std::mt19937_64 rng(seed);
  int submissions = 0;
  for (;;) {
    int over = 0;
    EXPECT_EQ(chefshat_match_is_over(m, &over), CHEFSHAT_OK);
    if (over) return submissions;
    char* raw = nullptr;
    const json pending = Take(chefshat_match_pending(m, &raw), &raw);
    if (pending.empty()) {
      ADD_FAILURE() << "match not over but nothing pending";
      return submissions;
    }
    const json& d = pending[0];
    const int seat = d["seat"];
    json action;
    if (d["kind"] == "play") {
      const json view = Take(chefshat_match_view(m, seat, &raw), &raw);
      const json& legal = view["legal"];
      action = legal[rng() % legal.size()];
    } else if (d["kind"] == "exchange_return") {
      const json view = Take(chefshat_match_view(m, seat, &raw), &raw);
      json cards = json::array();
      for (int i = 0; i < d["count"].get<int>(); ++i) {
        cards.push_back(view["own_hand"][i]["uid"]);
      }
      action = {{"kind", "exchange_return"}, {"cards", cards}};
    } else {
      action = {{"kind", "special_action"}, {"declare", rng() % 2 == 0}};
    }
    const chefshat_status st = chefshat_match_submit(m, seat, action.dump().c_str());
    EXPECT_EQ(st, CHEFSHAT_OK) << action.dump() << ": " << chefshat_last_error();
    if (st != CHEFSHAT_OK) return submissions;
    ++submissions;
  }
}

TEST(CApi, FullMatchThroughHandles) {
  for (uint64_t seed : {1u, 2u, 3u}) {
    MatchPtr m = NewMatch(R"({"target_score":6})", seed);
    EXPECT_GT(PlayOut(m.get(), seed), 10);
    char* raw = nullptr;
    EXPECT_TRUE(Take(chefshat_match_pending(m.get(), &raw), &raw).empty());
    EXPECT_EQ(chefshat_match_submit(m.get(), 0, R"({"kind":"pass"})"),
              CHEFSHAT_MATCH_ALREADY_OVER);
  }
}

TEST(CApi, ReplayOfLogEqualsLiveState) {
  MatchPtr m = NewMatch(nullptr, 77);
  PlayOut(m.get(), 77);
  char* log = nullptr;
  char* state = nullptr;
  char* replayed = nullptr;
  ASSERT_EQ(chefshat_match_log(m.get(), &log), CHEFSHAT_OK);
  ASSERT_EQ(chefshat_match_state(m.get(), &state), CHEFSHAT_OK);
  ASSERT_EQ(chefshat_replay(log, &replayed), CHEFSHAT_OK);
  EXPECT_STREQ(state, replayed);
  chefshat_string_free(log);
  chefshat_string_free(state);
  chefshat_string_free(replayed);
}

TEST(CApi, RejectedActionLeavesMatchUnchanged) {
  MatchPtr m = NewMatch(nullptr, 5);
  char* raw = nullptr;
  const json pending = Take(chefshat_match_pending(m.get(), &raw), &raw);
  ASSERT_EQ(pending.size(), 1u);
  const int seat = pending[0]["seat"];
  const std::string before = Take(chefshat_match_state(m.get(), &raw), &raw).dump();
  EXPECT_EQ(chefshat_match_submit(m.get(), seat, R"({"kind":"pass"})"),
            CHEFSHAT_ILLEGAL_ACTION);
  EXPECT_STREQ(chefshat_last_error(), "OPENER_MUST_PLAY");
  EXPECT_EQ(chefshat_match_submit(m.get(), (seat + 1) % 4, R"({"kind":"pass"})"),
            CHEFSHAT_ILLEGAL_ACTION);
  EXPECT_EQ(Take(chefshat_match_state(m.get(), &raw), &raw).dump(), before);
}

TEST(CApi, ViewIsRedacted) {
  MatchPtr m = NewMatch(nullptr, 9);
  char* raw = nullptr;
  const json v = Take(chefshat_match_view(m.get(), 2, &raw), &raw);
  EXPECT_EQ(v["seat"], 2);
  EXPECT_EQ(v["own_hand"].size(), 17u);
  EXPECT_FALSE(v.contains("hands"));
  EXPECT_EQ(chefshat_match_view(m.get(), 4, &raw), CHEFSHAT_INVALID_ARGUMENT);
}

TEST(CApi, TournamentRunAndConfigErrors) {
  const std::string config =
      R"({"matches":20,"seed":3,"agents":["greedy","random","conservative","random"],"rotate_seats":true})";
  char* raw = nullptr;
  const json stats = Take(chefshat_tournament_run(config.c_str(), &raw), &raw);
  int wins = 0;
  for (const json& a : stats["agents"]) wins += a["wins"].get<int>();
  EXPECT_EQ(wins, 20);

  raw = nullptr;
  EXPECT_EQ(chefshat_tournament_run(R"({"agents":["nobody","random","random","random"]})", &raw),
            CHEFSHAT_INVALID_CONFIG);
  EXPECT_EQ(raw, nullptr);
  EXPECT_NE(std::string(chefshat_last_error()), "");
}

TEST(CApi, ServerStartsOnEphemeralPortAndStops) {
  chefshat_server* s = nullptr;
  ASSERT_EQ(chefshat_server_start(R"({"host":"127.0.0.1","port":0})", &s), CHEFSHAT_OK)
      << chefshat_last_error();
  EXPECT_GT(chefshat_server_port(s), 0);
  EXPECT_EQ(chefshat_server_stop(s), CHEFSHAT_OK);
  EXPECT_EQ(chefshat_server_stop(s), CHEFSHAT_OK);
  chefshat_server_free(s);

  s = nullptr;
  EXPECT_EQ(chefshat_server_start(R"({"colour":"blue"})", &s), CHEFSHAT_INVALID_CONFIG);
  EXPECT_EQ(s, nullptr);
  EXPECT_EQ(chefshat_server_start(R"({"turn_timer_ms":-1})", &s), CHEFSHAT_INVALID_CONFIG);
}

}  // namespace
