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

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "chefshat/error.hpp"
#include "chefshat/simulator.hpp"
#include "gtest/gtest.h"

namespace chefshat {
namespace {

namespace fs = std::filesystem;

const Lineup kRandom4{"random", "random", "random", "random"};

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path ScratchDir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() /
                 ("chefshat_sim_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  return dir;
}

TEST(RunMatchTest, SameSeedSameLog) {
  const auto a = RunMatch(RuleConfig{}, kRandom4, 1);
  const auto b = RunMatch(RuleConfig{}, kRandom4, 1);
  EXPECT_EQ(ToJsonl(a.events), ToJsonl(b.events));
  EXPECT_EQ(CanonicalString(Replay(a.events)), CanonicalString(a.final_state));
}

TEST(RunMatchTest, SummaryAgreesWithLog) {
  const auto r = RunMatch(RuleConfig{}, Lineup{"greedy", "random", "conservative", "random"}, 5);
  const MatchSummary& s = r.summary;
  EXPECT_EQ(s.winner, r.final_state.winner);
  EXPECT_EQ(s.scores, r.final_state.scores);
  EXPECT_EQ(s.shifts, r.final_state.shift_number);
  int plays = 0, passes = 0, pizzas = 0;
  for (const Event& e : r.events) {
    plays += e.kind() == EventKind::kCardsPlayed;
    passes += e.kind() == EventKind::kPassed;
    pizzas += e.kind() == EventKind::kPizzaDone;
  }
  EXPECT_EQ(s.plays, plays);
  EXPECT_EQ(s.passes, passes);
  EXPECT_EQ(s.pizzas, pizzas);
  EXPECT_GE(s.pass_rate(), 0.0);
  EXPECT_LE(s.pass_rate(), 1.0);
}

// Chef is worth 3, so reaching 15 takes at least five shifts.
TEST(RunMatchTest, TargetNeedsAtLeastFiveShifts) {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const auto r = RunMatch(RuleConfig{}, kRandom4, seed);
    ASSERT_EQ(r.summary.end_reason, EndReason::kTarget);
    EXPECT_GE(r.summary.shifts, 5);
  }
}

TEST(RunMatchTest, UnknownAgentIsAConfigError) {
  try {
    RunMatch(RuleConfig{}, Lineup{"random", "random", "random", "nobody"}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidConfig);
  }
}

// Always answers with something illegal.
class BrokenAgent : public AgentPolicy {
 public:
  std::string_view name() const override { return "broken"; }
  Action DecidePlay(const PlayerView&) override {
    return Action::Play(11, 17, {});
  }
  std::vector<CardUid> DecideExchangeReturn(const PlayerView&,
                                            std::span<const CardUid>,
                                            int) override {
    return {};
  }
  bool DecideSpecialAction(const PlayerView&, SpecialKind) override {
    return false;
  }
};

TEST(MatchDriverTest, FaultsBecomeForcedFallbacks) {
  MatchDriver driver(Match::New(RuleConfig{}, 3));
  driver.SetAgent(0, std::make_unique<BrokenAgent>());
  for (Seat s = 1; s < kNumSeats; ++s) driver.SetAgent(s, MakeRandomAgent(s));
  EXPECT_TRUE(driver.Run().empty());
  const MatchState& st = driver.match().state();
  EXPECT_TRUE(st.ended);
  EXPECT_GT(driver.faults(), 0);
  int fault_events = 0, forced = 0;
  for (const Event& e : driver.match().log()) {
    if (const auto* f = e.as<payload::AgentFault>()) {
      ++fault_events;
      EXPECT_EQ(f->seat, 0);
    }
    if (const auto* p = e.as<payload::Passed>()) forced += p->forced;
    if (const auto* p = e.as<payload::CardsPlayed>()) forced += p->forced;
  }
  EXPECT_EQ(fault_events, driver.faults());
  EXPECT_GT(forced, 0);
  EXPECT_EQ(CanonicalString(Replay(driver.match().log())), CanonicalString(st));
  EXPECT_EQ(SummarizeLog(driver.match().log()).faults, driver.faults());
}

TEST(MatchDriverTest, ExternalSeatsWaitForInput) {
  MatchDriver driver(Match::New(RuleConfig{}, 3));
  for (Seat s = 1; s < kNumSeats; ++s) driver.SetAgent(s, MakeGreedyAgent(s));
  for (int guard = 0; guard < 100000; ++guard) {
    const auto open = driver.Run();
    if (open.empty()) break;
    ASSERT_EQ(open.front().seat, 0);
    const MatchState& st = driver.match().state();
    switch (open.front().kind) {
      case DecisionKind::kPlay:
        driver.SubmitPlay(0, FallbackPlay(MakeView(st, 0).legal));
        break;
      case DecisionKind::kSpecialAction:
        driver.SubmitSpecialAction(0, false);
        break;
      case DecisionKind::kExchangeReturn:
        driver.SubmitExchangeReturn(
            0, FallbackReturn(st.hands[0].cards, open.front().count));
        break;
    }
  }
  EXPECT_TRUE(driver.match().state().ended);
  EXPECT_EQ(driver.faults(), 0);
}

TEST(TournamentConfigTest, FromJson) {
  const auto c = TournamentConfigFromJson(nlohmann::json::parse(R"({
    "matches": 12, "seed": 99, "agents": ["greedy","random","random","conservative"],
    "rotate_seats": true, "formats": ["csv"], "parallel": 2, "max_shifts": 30,
    "rules": {"target_score": 12}})"));
  EXPECT_EQ(c.matches, 12);
  EXPECT_EQ(c.master_seed, 99u);
  EXPECT_EQ(c.lineup[3], "conservative");
  EXPECT_TRUE(c.rotate_seats);
  EXPECT_FALSE(c.write_jsonl);
  EXPECT_TRUE(c.write_csv);
  EXPECT_EQ(c.rules.max_shifts, 30);
  EXPECT_EQ(c.rules.target_score, 12);

  for (const char* bad :
       {R"({"matches": 0})", R"({"agents": ["random"]})",
        R"({"agents": ["a","b","c","d"]})", R"({"formats": ["xml"]})",
        R"({"bogus": 1})", R"({"parallel": 0})", R"({"rules": {"max_shifts": 0}})"}) {
    try {
      TournamentConfigFromJson(nlohmann::json::parse(bad));
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidConfig) << bad;
    }
  }
}

TEST(TournamentTest, SeatRotation) {
  TournamentConfig c;
  c.lineup = {"a", "b", "c", "d"};
  c.rotate_seats = true;
  EXPECT_EQ(SeatAgents(c, 0), (Lineup{"a", "b", "c", "d"}));
  EXPECT_EQ(SeatAgents(c, 1), (Lineup{"d", "a", "b", "c"}));
  EXPECT_EQ(SeatAgents(c, 5), (Lineup{"d", "a", "b", "c"}));
  c.rotate_seats = false;
  EXPECT_EQ(SeatAgents(c, 3), (Lineup{"a", "b", "c", "d"}));
}

TEST(TournamentTest, SingleMatchStatsEqualItsSummary) {
  TournamentConfig c;
  c.master_seed = 4;
  const TournamentStats stats = RunTournament(c);
  ASSERT_EQ(stats.matches.size(), 1u);
  const auto r = RunMatch(c.rules, c.lineup, MatchSeed(4, 0));
  EXPECT_EQ(stats.matches[0].winner, r.summary.winner);
  EXPECT_EQ(stats.matches[0].scores, r.summary.scores);
  EXPECT_EQ(stats.matches[0].shifts, r.summary.shifts);
  int wins = 0;
  for (const AgentStats& a : stats.agents) wins += a.wins;
  EXPECT_EQ(wins, 1);
}

TEST(TournamentTest, WinsSumToMatchesAndRatesAreBounded) {
  TournamentConfig c;
  c.matches = 40;
  c.master_seed = 17;
  c.lineup = {"greedy", "random", "conservative", "random"};
  c.rotate_seats = true;
  const TournamentStats stats = RunTournament(c);
  int wins = 0;
  for (const AgentStats& a : stats.agents) {
    wins += a.wins;
    EXPECT_GE(a.win_rate, 0.0);
    EXPECT_LE(a.win_rate, 1.0);
  }
  EXPECT_EQ(wins, c.matches);
  EXPECT_FALSE(stats.any_fault());
}

TEST(TournamentTest, ParallelOutputEqualsSerial) {
  TournamentConfig c;
  c.matches = 24;
  c.master_seed = 2024;
  c.rotate_seats = true;
  const fs::path serial = ScratchDir("serial"), parallel = ScratchDir("par");
  c.output_dir = serial;
  RunTournament(c);
  c.output_dir = parallel;
  c.parallel = 8;
  RunTournament(c);
  std::set<std::string> names;
  for (const auto& entry : fs::directory_iterator(serial)) {
    names.insert(entry.path().filename().string());
  }
  EXPECT_EQ(names.size(), 24u + 3u);
  for (const std::string& n : names) {
    EXPECT_EQ(Slurp(serial / n), Slurp(parallel / n)) << n;
  }
  // matches.csv: header + one row per match + a total row, fixed width.
  std::istringstream csv(Slurp(serial / "matches.csv"));
  std::string line, last;
  int rows = 0;
  size_t columns = 0;
  while (std::getline(csv, line)) {
    const size_t n = std::count(line.begin(), line.end(), ',');
    if (rows == 0) columns = n;
    EXPECT_EQ(n, columns) << line;
    ++rows;
    last = line;
  }
  EXPECT_EQ(rows, 1 + 24 + 1);
  EXPECT_EQ(last.rfind("total,", 0), 0u);
  fs::remove_all(serial);
  fs::remove_all(parallel);
}

TEST(TournamentTest, LogsReplay) {
  TournamentConfig c;
  c.matches = 3;
  c.master_seed = 8;
  const fs::path dir = ScratchDir("replay");
  c.output_dir = dir;
  const TournamentStats stats = RunTournament(c);
  for (int i = 0; i < c.matches; ++i) {
    const auto events = ParseJsonl(Slurp(dir / LogFileName(i)));
    EXPECT_EQ(Replay(events).winner, stats.matches[i].winner);
  }
  fs::remove_all(dir);
}

}  // namespace
}  // namespace chefshat
