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

#ifndef CHEFSHAT_SIMULATOR_HPP_
#define CHEFSHAT_SIMULATOR_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chefshat/agents.hpp"
#include "chefshat/match.hpp"
#include "json.hpp"

namespace chefshat {

using Lineup = std::array<std::string, kNumSeats>;

// Seed derivation, shared by the simulator and the server:
//   match seed  = DeriveSeed(master_seed, match_index)
//   agent seed  = DeriveSeed(match_seed, kAgentSeedDomain + seat)
inline constexpr uint64_t kAgentSeedDomain = 0xA6E7;
inline uint64_t MatchSeed(uint64_t master_seed, uint64_t match_index) {
  return DeriveSeed(master_seed, match_index);
}
inline uint64_t AgentSeed(uint64_t match_seed, Seat seat) {
  return DeriveSeed(match_seed, kAgentSeedDomain + static_cast<uint64_t>(seat));
}

// Runs a match where some seats are played by in-process agents and the rest
// answer from outside (network clients). Exchange answers are buffered until
// both the Chef and the Sous-Chef have replied.
class MatchDriver {
 public:
  explicit MatchDriver(Match match);

  Match& match() { return match_; }
  const Match& match() const { return match_; }

  // A null agent marks the seat as answered from outside.
  void SetAgent(Seat seat, std::unique_ptr<AgentPolicy> agent);
  bool HasAgent(Seat seat) const { return agents_[seat] != nullptr; }

  // Lets agents act until the match ends or only outside seats are awaited.
  // Returns the decisions still open.
  std::vector<Decision> Run();
  std::vector<Decision> Outstanding() const;

  // Outside answers. Throw IllegalActionError / Error on rejection; nothing
  // is applied in that case.
  void SubmitPlay(Seat seat, const Action& action, bool forced = false);
  void SubmitSpecialAction(Seat seat, bool declare);
  void SubmitExchangeReturn(Seat seat, std::vector<CardUid> cards);

  int faults() const { return faults_; }

 private:
  void AskAgent(const Decision& d);
  void MaybeCompleteExchange();
  const Decision* Find(Seat seat, DecisionKind kind, Decision& storage) const;

  Match match_;
  std::array<std::unique_ptr<AgentPolicy>, kNumSeats> agents_;
  std::array<std::optional<std::vector<CardUid>>, kNumSeats> returns_;
  int faults_ = 0;
};

struct MatchSummary {
  int match_index = 0;
  uint64_t seed = 0;
  Lineup seat_agents;
  // Lineup position of the agent in each seat.
  std::array<int, kNumSeats> seat_lineup_index{0, 1, 2, 3};
  std::optional<Seat> winner;
  EndReason end_reason = EndReason::kTarget;
  int shifts = 0;
  int pizzas = 0;
  int plays = 0;
  int passes = 0;
  int special_actions = 0;
  int food_fights = 0;
  int dinners_served = 0;
  int faults = 0;
  std::array<int, kNumSeats> scores{};

  double pass_rate() const {
    const int moves = plays + passes;
    return moves == 0 ? 0.0 : static_cast<double>(passes) / moves;
  }
};

// Recomputes the summary from an event log alone.
MatchSummary SummarizeLog(const std::vector<Event>& events);

struct MatchResult {
  std::vector<Event> events;
  MatchSummary summary;
  MatchState final_state;
};

// Deterministic in (config, lineup, seed). Agent faults become forced moves
// and are counted, never thrown.
MatchResult RunMatch(const RuleConfig& config, const Lineup& seat_agents,
                     uint64_t seed, Match::Observer observer = {});

struct TournamentConfig {
  int matches = 1;
  uint64_t master_seed = 0;
  Lineup lineup{"random", "random", "random", "random"};
  RuleConfig rules;
  bool rotate_seats = false;
  std::optional<std::filesystem::path> output_dir;
  bool write_jsonl = true;
  bool write_csv = true;
  int parallel = 1;
};

// Validates names, counts and paths; throws Error(kInvalidConfig).
void Validate(const TournamentConfig& config);
TournamentConfig TournamentConfigFromJson(const nlohmann::json& j);

// Seat agents for match `index`; with rotation the lineup moves one seat per
// match (lineup entry p sits at seat (p + index) mod 4).
Lineup SeatAgents(const TournamentConfig& config, int index,
                  std::array<int, kNumSeats>* lineup_index = nullptr);

struct AgentStats {
  std::string name;
  int wins = 0;
  double win_rate = 0.0;
  double mean_final_score = 0.0;
  double mean_shifts = 0.0;
};

struct TournamentStats {
  std::vector<MatchSummary> matches;
  std::array<AgentStats, kNumSeats> agents;  // by lineup position
  std::vector<int> faulted_matches;           // indices with agent faults
  std::vector<std::string> failures;          // matches that could not run
  double runtime_ms = 0.0;

  bool any_fault() const { return !faulted_matches.empty() || !failures.empty(); }
};

using MatchHook = std::function<Match::Observer(int match_index)>;

// Runs every match (across `parallel` threads), writes one JSONL log per
// match and the CSV tables when an output directory is set, and folds stats
// in match-index order.
TournamentStats RunTournament(const TournamentConfig& config,
                              const MatchHook& hook = {});

// Row per match plus a final "total" row.
std::string MatchesCsv(const TournamentStats& stats);
std::string AgentsCsv(const TournamentStats& stats);
// Without runtime, so identical configs give identical output.
nlohmann::json ToJson(const TournamentStats& stats, bool include_matches = true);

std::string LogFileName(int match_index);

}  // namespace chefshat

#endif  // CHEFSHAT_SIMULATOR_HPP_
