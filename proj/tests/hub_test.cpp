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

#include <fstream>
#include <memory>
#include <sstream>

#include "chefshat/hub.hpp"
#include "chefshat/simulator.hpp"
#include "gtest/gtest.h"
#include "support/harness.hpp"

namespace chefshat::server {
namespace {

using chefshat::testing::Frame;
using chefshat::testing::Inbox;
using chefshat::testing::RedactionViolations;
using chefshat::testing::ScriptedPlayer;
using nlohmann::json;

class HubTest : public ::testing::Test {
 protected:
  struct Client {
    ConnectionId conn = 0;
    std::shared_ptr<Inbox> inbox = std::make_shared<Inbox>();
    size_t read = 0;
    std::unique_ptr<ScriptedPlayer> player;
  };

  HubOptions Options() {
    HubOptions o;
    o.now_ms = [this] { return now_; };
    o.make_token = [this] { return "tok" + std::to_string(next_token_++); };
    o.make_table_id = [this] { return "table" + std::to_string(next_table_++); };
    o.make_seed = [] { return uint64_t{42}; };
    return o;
  }

  void MakeHub(HubOptions o) { hub_ = std::make_unique<Hub>(std::move(o)); }

  Client& Connect() {
    if (!hub_) MakeHub(Options());
    clients_.push_back(std::make_unique<Client>());
    Client& c = *clients_.back();
    auto inbox = c.inbox;
    c.conn = hub_->Connect([inbox](std::string f) { inbox->Push(f); });
    return c;
  }

  Client& Hello(std::optional<std::string> token = std::nullopt) {
    Client& c = Connect();
    json body = json::object();
    if (token) body["token"] = *token;
    hub_->Receive(c.conn, Frame("Hello", body));
    return c;
  }

  void Send(Client& c, std::string_view type, json body) {
    hub_->Receive(c.conn, Frame(type, std::move(body)));
  }

  // Frames received since the last call.
  std::vector<json> Drain(Client& c) {
    std::vector<json> fresh = c.inbox->Since(c.read);
    c.read += fresh.size();
    return fresh;
  }

  static std::optional<json> Last(const std::vector<json>& frames,
                                  std::string_view type) {
    for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
      if ((*it)["type"] == type) return *it;
    }
    return std::nullopt;
  }

  // Feeds every pending frame to scripted players until nothing moves.
  void Settle() {
    bool progress = true;
    while (progress) {
      progress = false;
      for (auto& c : clients_) {
        if (!c->player) continue;
        for (const json& f : Drain(*c)) {
          if (auto reply = c->player->OnFrame(f)) {
            hub_->Receive(c->conn, *reply);
            progress = true;
          }
        }
      }
    }
  }

  std::string CreateTable(Client& c, json body) {
    Send(c, "CreateTable", std::move(body));
    const auto state = Last(Drain(c), "TableState");
    EXPECT_TRUE(state);
    return state ? (*state)["body"]["table_id"].get<std::string>() : "";
  }

  int64_t now_ = 0;
  int next_token_ = 0;
  int next_table_ = 0;
  std::unique_ptr<Hub> hub_;
  std::vector<std::unique_ptr<Client>> clients_;
};

TEST_F(HubTest, HelloIssuesToken) {
  Client& c = Hello();
  const auto frames = Drain(c);
  ASSERT_EQ(frames.size(), 1u);
  EXPECT_EQ(frames[0]["type"], "Hello");
  EXPECT_EQ(frames[0]["protocol_version"], 1);
  EXPECT_EQ(frames[0]["body"]["token"], "tok0");
  EXPECT_EQ(frames[0]["body"]["resumed"], false);
}

TEST_F(HubTest, VersionMismatchAndGarbage) {
  Client& c = Connect();
  hub_->Receive(c.conn, Frame("Hello", json::object(), 2));
  hub_->Receive(c.conn, "{not json");
  hub_->Receive(c.conn, Frame("Dance"));
  hub_->Receive(c.conn, Frame("CreateTable"));
  hub_->Receive(c.conn, Frame("Ping", {{"nonce", 5}}));
  const auto f = Drain(c);
  ASSERT_EQ(f.size(), 5u);
  EXPECT_EQ(f[0]["body"]["code"], "UNSUPPORTED_VERSION");
  EXPECT_EQ(f[1]["body"]["code"], "BAD_MESSAGE");
  EXPECT_EQ(f[2]["body"]["code"], "BAD_MESSAGE");
  EXPECT_EQ(f[3]["body"]["code"], "NO_SESSION");
  EXPECT_EQ(f[4]["type"], "Pong");
  EXPECT_EQ(f[4]["body"]["nonce"], 5);
}

TEST_F(HubTest, CreateTableWithThreeBotsLeavesOneSeat) {
  Client& c = Hello();
  Drain(c);
  Send(c, "CreateTable",
       {{"bots", {{{"seat", 0}, {"agent", "random"}},
                  {{"seat", 1}, {"agent", "greedy"}},
                  {{"seat", 3}, {"agent", "conservative"}}}}});
  const auto f = Drain(c);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0]["type"], "TableState");
  const json& seats = f[0]["body"]["seats"];
  int open = 0;
  for (const json& s : seats) open += s["kind"] == "open";
  EXPECT_EQ(open, 1);
  EXPECT_EQ(seats[2]["kind"], "open");
  EXPECT_EQ(f[0]["body"]["status"], "lobby");
  EXPECT_FALSE(f[0]["body"].contains("seed"));
}

TEST_F(HubTest, TableIdsAreDistinct) {
  Client& c = Hello();
  const std::string a = CreateTable(c, json::object());
  const std::string b = CreateTable(c, json::object());
  EXPECT_NE(a, b);
}

TEST_F(HubTest, InvalidCreateRequests) {
  Client& c = Hello();
  Drain(c);
  for (const json& body :
       {json{{"rules", {{"target_score", 0}}}},
        json{{"bots", {{{"seat", 5}, {"agent", "random"}}}}},
        json{{"bots", {{{"seat", 1}, {"agent", "wizard"}}}}},
        json{{"turn_timer_ms", -1}}}) {
    Send(c, "CreateTable", body);
    const auto f = Drain(c);
    ASSERT_EQ(f.size(), 1u) << body;
    EXPECT_EQ(f[0]["body"]["code"], "INVALID_CONFIG") << body;
  }
}

TEST_F(HubTest, LastJoinStartsTheMatch) {
  Client& host = Hello();
  const std::string id = CreateTable(
      host, {{"bots", {{{"seat", 0}, {"agent", "random"}},
                       {{"seat", 1}, {"agent", "random"}},
                       {{"seat", 2}, {"agent", "random"}}}}});
  Client& me = Hello();
  Drain(me);
  Send(me, "JoinTable", {{"table_id", id}});
  const auto f = Drain(me);
  ASSERT_GE(f.size(), 2u);
  EXPECT_EQ(f[0]["type"], "SeatAssigned");
  EXPECT_EQ(f[0]["body"]["seat"], 3);
  const auto view = Last(f, "ViewUpdate");
  ASSERT_TRUE(view);
  EXPECT_EQ((*view)["body"]["view"]["seat"], 3);
  const auto log = hub_->TableLog(id);
  ASSERT_TRUE(log);
  const MatchState s = Replay(*log);
  EXPECT_EQ((*view)["body"]["view"]["own_hand"].size(),
            static_cast<size_t>(s.hands[3].cards.size()));

  Client& late = Hello();
  Drain(late);
  Send(late, "JoinTable", {{"table_id", id}});
  EXPECT_EQ(Drain(late)[0]["body"]["code"], "TABLE_FULL");
  Send(late, "JoinTable", {{"table_id", "nope"}});
  EXPECT_EQ(Drain(late)[0]["body"]["code"], "UNKNOWN_TABLE");
}

TEST_F(HubTest, FourHumansEachGetTheirOwnView) {
  Client& host = Hello();
  const std::string id = CreateTable(host, json::object());
  std::vector<Client*> seats;
  for (int i = 0; i < 4; ++i) {
    Client& c = Hello();
    Drain(c);
    Send(c, "JoinTable", {{"table_id", id}, {"seat", i}});
    seats.push_back(&c);
  }
  const MatchState s = Replay(*hub_->TableLog(id));
  for (int i = 0; i < 4; ++i) {
    const auto f = Drain(*seats[i]);
    const auto view = Last(f, "ViewUpdate");
    ASSERT_TRUE(view) << i;
    std::vector<int> uids;
    for (const json& c : (*view)["body"]["view"]["own_hand"]) uids.push_back(c["uid"]);
    EXPECT_EQ(uids, s.hands[i].cards.uids());
    EXPECT_TRUE(RedactionViolations(*hub_->TableLog(id), i, f).empty());
  }
  const Seat opener = *s.pizza.to_act;
  Send(*seats[opener], "SubmitAction",
       {{"table_id", id}, {"action", {{"kind", "pass"}}}});
  const auto f = Drain(*seats[opener]);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0]["type"], "ActionRejected");
  EXPECT_EQ(f[0]["body"]["reason"], "OPENER_MUST_PLAY");
}

// Plays a 4-human table with scripted clients until the match ends.
TEST_F(HubTest, ScriptedHumansFinishAndStayRedacted) {
  Client& host = Hello();
  const std::string id = CreateTable(host, {{"seed", 77}});
  for (int i = 0; i < 4; ++i) {
    Client& c = Hello();
    c.player = std::make_unique<ScriptedPlayer>(1000 + i);
    Send(c, "JoinTable", {{"table_id", id}});
  }
  Settle();
  const auto log = *hub_->TableLog(id);
  const MatchState s = Replay(log);
  EXPECT_TRUE(s.ended);
  for (size_t i = 1; i < clients_.size(); ++i) {
    auto& c = *clients_[i];
    EXPECT_TRUE(c.player->ended());
    const auto frames = c.inbox->Snapshot();
    const auto bad = RedactionViolations(log, *c.player->seat(), frames);
    EXPECT_TRUE(bad.empty()) << bad.front();
    int submits = 0, answers = 0;
    for (const json& f : frames) {
      answers += f["type"] == "ActionAccepted" || f["type"] == "ActionRejected";
      submits += f["type"] == "ActionRejected";
    }
    EXPECT_EQ(submits, 0);  // scripted players only pick offered actions
    EXPECT_GT(answers, 0);
  }
  EXPECT_EQ(hub_->Counts().finished, 1);
}

// The sniffer has to catch planted leaks, or its silence above means nothing.
TEST_F(HubTest, SnifferFlagsPlantedLeaks) {
  Client& host = Hello();
  const std::string id = CreateTable(host, json::object());
  Client& c = Hello();
  Drain(c);
  Send(c, "JoinTable", {{"table_id", id}, {"seat", 0}});
  for (int i = 1; i < 4; ++i) {
    Client& other = Hello();
    Send(other, "JoinTable", {{"table_id", id}, {"seat", i}});
  }
  const auto log = *hub_->TableLog(id);
  const MatchState s = Replay(log);
  const auto frames = Drain(c);
  ASSERT_TRUE(RedactionViolations(log, 0, frames).empty());
  auto view = Last(frames, "ViewUpdate");
  ASSERT_TRUE(view);

  // A card from seat 2's hand slipped into seat 0's view.
  json leaked = *view;
  const int foreign = s.hands[2].cards.uids().front();
  leaked["body"]["view"]["own_hand"].push_back({{"uid", foreign}});
  EXPECT_FALSE(RedactionViolations(log, 0, {leaked}).empty());

  // Another seat's deal inside an event delta.
  json dealt = *view;
  dealt["body"]["events"] = json::array(
      {{{"seq", 3}, {"type", "Dealt"},
        {"payload", {{"seat", 3}, {"cards", s.hands[3].cards.uids()}}}}});
  EXPECT_FALSE(RedactionViolations(log, 0, {dealt}).empty());

  // The match seed.
  json seeded = *view;
  seeded["body"]["seed"] = 99;
  EXPECT_FALSE(RedactionViolations(log, 0, {seeded}).empty());
}

TEST_F(HubTest, IllegalPlaysAreRejectedWithReason) {
  Client& host = Hello();
  const std::string id = CreateTable(host, {{"seed", 5}});
  for (int i = 0; i < 4; ++i) {
    Client& c = Hello();
    c.player = std::make_unique<ScriptedPlayer>(i);
    Send(c, "JoinTable", {{"table_id", id}});
  }
  // Step manually until some seat to act holds a card that is not rarer than
  // the top of the pizza.
  bool tested = false;
  for (int guard = 0; guard < 10000 && !tested; ++guard) {
    const MatchState s = Replay(*hub_->TableLog(id));
    if (s.ended) break;
    if (s.phase == ShiftPhase::kMakingPizzas && s.pizza.top_face) {
      const Seat seat = *s.pizza.to_act;
      for (const Card& c : s.hands[seat].cards.cards()) {
        if (c.face >= *s.pizza.top_face && !c.is_joker()) {
          Client& cl = *clients_[1 + seat];
          // Make sure the client has consumed its earlier frames.
          Drain(cl);
          Send(cl, "SubmitAction",
               {{"table_id", id},
                {"action",
                 {{"kind", "play"}, {"face", c.face}, {"count", s.pizza.top_count}}}});
          const auto f = Drain(cl);
          ASSERT_EQ(f.size(), 1u);
          EXPECT_EQ(f[0]["type"], "ActionRejected");
          const std::string reason = f[0]["body"]["reason"];
          EXPECT_TRUE(reason == "NOT_RARER" || reason == "CARDS_NOT_HELD") << reason;
          if (s.hands[seat].cards.CountFace(c.face) >= s.pizza.top_count) {
            EXPECT_EQ(reason, "NOT_RARER");
            tested = true;
          }
          break;
        }
      }
    }
    // Let one scripted client answer its pending frames.
    bool moved = false;
    for (auto& c : clients_) {
      if (!c->player || moved) continue;
      for (const json& f : Drain(*c)) {
        if (auto reply = c->player->OnFrame(f)) {
          hub_->Receive(c->conn, *reply);
          moved = true;
        }
      }
    }
    if (!moved) break;
  }
  EXPECT_TRUE(tested);
}

TEST_F(HubTest, TimerFallbackPassesOrOpens) {
  auto o = Options();
  MakeHub(o);
  Client& host = Hello();
  const std::string id = CreateTable(host, {{"turn_timer_ms", 1000}, {"seed", 9}});
  std::vector<Client*> seats;
  for (int i = 0; i < 4; ++i) {
    Client& c = Hello();
    Send(c, "JoinTable", {{"table_id", id}, {"seat", i}});
    Drain(c);
    seats.push_back(&c);
  }
  const Seat opener = *Replay(*hub_->TableLog(id)).pizza.to_act;
  now_ += 999;
  hub_->Tick();
  EXPECT_EQ(hub_->TableLog(id)->size(), Replay(*hub_->TableLog(id)).next_seq);
  EXPECT_EQ(Replay(*hub_->TableLog(id)).pizza.to_act, opener);  // not yet
  now_ += 1;
  hub_->Tick();
  auto log = *hub_->TableLog(id);
  // Opener cannot pass, so the fallback is the first canonical play.
  const auto* played = log.back().as<payload::CardsPlayed>();
  ASSERT_NE(played, nullptr);
  EXPECT_EQ(played->seat, opener);
  EXPECT_TRUE(played->forced);
  const MatchState before = Replay(std::span(log).first(log.size() - 1));
  EXPECT_EQ(Action::Play(played->face, played->count, played->cards),
            LegalActions(before.pizza, before.hands[opener], opener).front());
  const auto f = Drain(*seats[opener]);
  const auto view = Last(f, "ViewUpdate");
  ASSERT_TRUE(view);
  EXPECT_EQ((*view)["body"]["auto_moves"][0]["seat"], opener);
  EXPECT_EQ((*view)["body"]["auto_moves"][0]["reason"], "timeout");

  // A late answer from the opener is refused.
  Send(*seats[opener], "SubmitAction",
       {{"table_id", id}, {"action", {{"kind", "pass"}}}});
  const auto late = Drain(*seats[opener]);
  ASSERT_EQ(late.size(), 1u);
  EXPECT_EQ(late[0]["body"]["reason"], "NOT_YOUR_TURN");

  // The next seat can pass, so its fallback is a Pass.
  const Seat next = *Replay(*hub_->TableLog(id)).pizza.to_act;
  now_ += 1000;
  hub_->Tick();
  log = *hub_->TableLog(id);
  const auto* passed = log[log.size() - 1].as<payload::Passed>();
  ASSERT_NE(passed, nullptr);
  EXPECT_EQ(passed->seat, next);
  EXPECT_TRUE(passed->forced);
}

TEST_F(HubTest, DisabledTimerNeverFires) {
  Client& host = Hello();
  const std::string id = CreateTable(host, {{"turn_timer_ms", 0}});
  for (int i = 0; i < 4; ++i) {
    Client& c = Hello();
    Send(c, "JoinTable", {{"table_id", id}});
  }
  const size_t before = hub_->TableLog(id)->size();
  now_ += 1'000'000'000;
  hub_->Tick();
  EXPECT_EQ(hub_->TableLog(id)->size(), before);
}

TEST_F(HubTest, ReconnectKeepsTheSeat) {
  Client& host = Hello();
  const std::string id = CreateTable(
      host, {{"bots", {{{"seat", 1}, {"agent", "greedy"}},
                       {{"seat", 2}, {"agent", "greedy"}},
                       {{"seat", 3}, {"agent", "greedy"}}}}});
  Client& me = Hello();
  const std::string token = Drain(me)[0]["body"]["token"];
  Send(me, "JoinTable", {{"table_id", id}});
  Drain(me);
  hub_->Disconnect(me.conn);
  now_ += 30'000;
  hub_->Tick();

  Client& again = Hello(token);
  const auto f = Drain(again);
  ASSERT_GE(f.size(), 3u);
  EXPECT_EQ(f[0]["type"], "Hello");
  EXPECT_EQ(f[0]["body"]["resumed"], true);
  EXPECT_EQ(f[1]["type"], "SeatAssigned");
  EXPECT_EQ(f[1]["body"]["seat"], 0);
  const auto view = Last(f, "ViewUpdate");
  ASSERT_TRUE(view);
  EXPECT_EQ((*view)["body"]["view"]["seat"], 0);
  // The full public history is replayed to the fresh connection.
  EXPECT_EQ((*view)["body"]["events"][0]["kind"], "MatchStarted");
  EXPECT_TRUE((*view)["body"]["events"][0]["payload"]["seed"].is_null());

  Send(again, "JoinTable", {{"table_id", id}});
  EXPECT_EQ(Drain(again)[0]["body"]["seat"], 0);
}

TEST_F(HubTest, GraceExpiryHandsSeatToBot) {
  Client& host = Hello();
  const std::string id = CreateTable(
      host, {{"bots", {{{"seat", 1}, {"agent", "random"}},
                       {{"seat", 2}, {"agent", "random"}},
                       {{"seat", 3}, {"agent", "random"}}}}});
  Client& me = Hello();
  Send(me, "JoinTable", {{"table_id", id}});
  hub_->Disconnect(me.conn);
  now_ += 59'999;
  hub_->Tick();
  EXPECT_FALSE(Replay(*hub_->TableLog(id)).ended);
  now_ += 1;
  hub_->Tick();
  EXPECT_TRUE(Replay(*hub_->TableLog(id)).ended);
  EXPECT_EQ(hub_->Counts().finished, 1);
}

TEST_F(HubTest, FourBotTableMatchesSimulator) {
  Client& host = Hello();
  for (uint64_t seed : {1u, 2u, 3u}) {
    const std::string id = CreateTable(
        host, {{"seed", seed},
               {"bots", {{{"seat", 0}, {"agent", "random"}},
                         {{"seat", 1}, {"agent", "greedy"}},
                         {{"seat", 2}, {"agent", "conservative"}},
                         {{"seat", 3}, {"agent", "random"}}}}});
    const auto sim = RunMatch(RuleConfig{},
                              Lineup{"random", "greedy", "conservative", "random"},
                              seed);
    EXPECT_EQ(ToJsonl(*hub_->TableLog(id)), ToJsonl(sim.events));
  }
}

TEST_F(HubTest, SubmitWithoutSeatOrTable) {
  Client& c = Hello();
  Drain(c);
  Send(c, "SubmitAction", {{"table_id", "missing"}, {"action", {{"kind", "pass"}}}});
  auto f = Drain(c);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0]["type"], "ActionRejected");
  EXPECT_EQ(f[0]["body"]["reason"], "UNKNOWN_TABLE");
  const std::string id = CreateTable(c, json::object());
  Send(c, "SubmitAction", {{"table_id", id}, {"action", {{"kind", "pass"}}}});
  f = Drain(c);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0]["body"]["reason"], "NOT_SEATED");
}

TEST_F(HubTest, FinishedLogsAreWritten) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("chefshat_hub_logs_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  auto o = Options();
  o.log_dir = dir;
  MakeHub(o);
  Client& host = Hello();
  const std::string id = CreateTable(
      host, {{"seed", 4},
             {"bots", {{{"seat", 0}, {"agent", "greedy"}},
                       {{"seat", 1}, {"agent", "greedy"}},
                       {{"seat", 2}, {"agent", "greedy"}},
                       {{"seat", 3}, {"agent", "greedy"}}}}});
  std::ifstream in(dir / (id + ".jsonl"));
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), ToJsonl(*hub_->TableLog(id)));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace chefshat::server
