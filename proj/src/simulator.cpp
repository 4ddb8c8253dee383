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

#include "chefshat/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace chefshat {
namespace {

using nlohmann::json;

bool ValidReturn(const CardSet& hand, const std::vector<CardUid>& cards,
                 int count) {
  if (static_cast<int>(cards.size()) != count) return false;
  CardSet seen;
  for (CardUid uid : cards) {
    if (!hand.contains(uid) || seen.contains(uid)) return false;
    seen.insert(uid);
  }
  return true;
}

std::string FormatRate(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot write " + path.string());
  }
}

[[noreturn]] void BadConfig(const std::string& what) {
  throw Error(ErrorCode::kInvalidConfig, what);
}

}  // namespace

// --- MatchDriver --------------------------------------------------------

MatchDriver::MatchDriver(Match match) : match_(std::move(match)) {}

void MatchDriver::SetAgent(Seat seat, std::unique_ptr<AgentPolicy> agent) {
  agents_.at(seat) = std::move(agent);
}

std::vector<Decision> MatchDriver::Outstanding() const {
  std::vector<Decision> open = match_.Pending();
  std::erase_if(open, [this](const Decision& d) {
    return d.kind == DecisionKind::kExchangeReturn &&
           returns_[d.seat].has_value();
  });
  return open;
}

std::vector<Decision> MatchDriver::Run() {
  for (;;) {
    match_.Advance();
    const std::vector<Decision> open = Outstanding();
    const auto next = std::find_if(open.begin(), open.end(),
                                   [this](const Decision& d) {
                                     return agents_[d.seat] != nullptr;
                                   });
    if (next == open.end()) return open;
    AskAgent(*next);
  }
}

void MatchDriver::AskAgent(const Decision& d) {
  AgentPolicy& agent = *agents_[d.seat];
  const MatchState& s = match_.state();
  const PlayerView view = MakeView(s, d.seat, match_.public_log());
  switch (d.kind) {
    case DecisionKind::kPlay: {
      const Action action = agent.DecidePlay(view);
      const LegalityResult check =
          ValidatePlay(s.pizza, s.hands[d.seat], action, d.seat,
                       s.rules.joker_mode);
      if (check.legal) {
        match_.Step(d.seat, action);
      } else {
        ++faults_;
        match_.RecordFault(d.seat, "play", std::string(ReasonName(check.reason)));
        match_.Step(d.seat, FallbackPlay(view.legal), /*forced=*/true);
      }
      break;
    }
    case DecisionKind::kSpecialAction: {
      const bool declare = agent.DecideSpecialAction(view, d.offered);
      match_.ResolveSpecialAction(
          declare ? std::optional<SpecialAction>(SpecialAction{d.offered, d.seat})
                  : std::nullopt);
      break;
    }
    case DecisionKind::kExchangeReturn: {
      std::vector<CardUid> cards =
          agent.DecideExchangeReturn(view, d.received, d.count);
      if (!ValidReturn(s.hands[d.seat].cards, cards, d.count)) {
        ++faults_;
        match_.RecordFault(d.seat, "exchange_return", "CARDS_NOT_HELD");
        cards = FallbackReturn(s.hands[d.seat].cards, d.count);
      }
      returns_[d.seat] = std::move(cards);
      MaybeCompleteExchange();
      break;
    }
  }
}

void MatchDriver::MaybeCompleteExchange() {
  const MatchState& s = match_.state();
  const auto chef = s.SeatWithRole(RoleKind::kChef);
  const auto sous = s.SeatWithRole(RoleKind::kSousChef);
  if (!chef || !sous || !returns_[*chef] || !returns_[*sous]) return;
  const std::vector<CardUid> chef_cards = *returns_[*chef];
  const CardUid sous_card = returns_[*sous]->front();
  returns_ = {};
  match_.PerformExchange(chef_cards, sous_card);
}

const Decision* MatchDriver::Find(Seat seat, DecisionKind kind,
                                  Decision& storage) const {
  for (const Decision& d : Outstanding()) {
    if (d.seat == seat && d.kind == kind) {
      storage = d;
      return &storage;
    }
  }
  return nullptr;
}

void MatchDriver::SubmitPlay(Seat seat, const Action& action, bool forced) {
  Decision d;
  if (Find(seat, DecisionKind::kPlay, d) == nullptr) {
    throw IllegalActionError(LegalityReason::kNotYourTurn);
  }
  match_.Step(seat, action, forced);
}

void MatchDriver::SubmitSpecialAction(Seat seat, bool declare) {
  Decision d;
  if (Find(seat, DecisionKind::kSpecialAction, d) == nullptr) {
    throw IllegalActionError(LegalityReason::kNotYourTurn);
  }
  match_.ResolveSpecialAction(
      declare ? std::optional<SpecialAction>(SpecialAction{d.offered, seat})
              : std::nullopt);
}

void MatchDriver::SubmitExchangeReturn(Seat seat, std::vector<CardUid> cards) {
  Decision d;
  if (Find(seat, DecisionKind::kExchangeReturn, d) == nullptr) {
    throw IllegalActionError(LegalityReason::kNotYourTurn);
  }
  if (!ValidReturn(match_.state().hands[seat].cards, cards, d.count)) {
    throw Error(ErrorCode::kCardsNotHeld,
                "return " + std::to_string(d.count) + " distinct held cards");
  }
  returns_[seat] = std::move(cards);
  MaybeCompleteExchange();
}

// --- single matches ---------------------------------------------------------

MatchSummary SummarizeLog(const std::vector<Event>& events) {
  MatchSummary sum;
  for (const Event& e : events) {
    switch (e.kind()) {
      case EventKind::kMatchStarted:
        sum.seed = e.as<payload::MatchStarted>()->seed;
        break;
      case EventKind::kShiftStarted:
        sum.shifts = e.as<payload::ShiftStarted>()->shift;
        break;
      case EventKind::kPizzaDone:
        ++sum.pizzas;
        break;
      case EventKind::kCardsPlayed:
        ++sum.plays;
        break;
      case EventKind::kPassed:
        ++sum.passes;
        break;
      case EventKind::kSpecialActionDeclared:
        ++sum.special_actions;
        if (e.as<payload::SpecialActionDeclared>()->kind ==
            SpecialKind::kFoodFight) {
          ++sum.food_fights;
        } else {
          ++sum.dinners_served;
        }
        break;
      case EventKind::kAgentFault:
        ++sum.faults;
        break;
      case EventKind::kMatchEnded: {
        const auto* p = e.as<payload::MatchEnded>();
        sum.winner = p->winner;
        sum.end_reason = p->reason;
        sum.scores = p->scores;
        break;
      }
      default:
        break;
    }
  }
  return sum;
}

MatchResult RunMatch(const RuleConfig& config, const Lineup& seat_agents,
                     uint64_t seed, Match::Observer observer) {
  for (const std::string& name : seat_agents) {
    if (!IsKnownAgent(name)) BadConfig("unknown agent \"" + name + "\"");
  }
  Validate(config);
  MatchDriver driver(Match::New(config, seed, std::move(observer)));
  for (Seat s = 0; s < kNumSeats; ++s) {
    driver.SetAgent(s, MakeAgent(seat_agents[s], AgentSeed(seed, s)));
  }
  const auto open = driver.Run();
  if (!open.empty() || !driver.match().state().ended) {
    throw Error(ErrorCode::kAgentFault, "match stalled with open decisions");
  }
  MatchResult result;
  result.events = driver.match().log();
  result.final_state = driver.match().state();
  result.summary = SummarizeLog(result.events);
  result.summary.seat_agents = seat_agents;
  return result;
}

// --- tournaments -----------------------------------------------------------

void Validate(const TournamentConfig& config) {
  if (config.matches < 1) BadConfig("matches must be >= 1");
  if (config.parallel < 1 || config.parallel > 1024) {
    BadConfig("parallel must be in [1, 1024]");
  }
  for (const std::string& name : config.lineup) {
    if (!IsKnownAgent(name)) BadConfig("unknown agent \"" + name + "\"");
  }
  Validate(config.rules);
}

TournamentConfig TournamentConfigFromJson(const json& j) {
  if (!j.is_object()) BadConfig("tournament config must be an object");
  TournamentConfig c;
  std::optional<int> max_shifts;  // applied after "rules", whatever the order
  for (const auto& [key, v] : j.items()) {
    if (key == "matches") {
      if (!v.is_number_integer()) BadConfig("matches must be an integer");
      c.matches = v.get<int>();
    } else if (key == "seed") {
      if (!v.is_number_unsigned()) BadConfig("seed must be an unsigned integer");
      c.master_seed = v.get<uint64_t>();
    } else if (key == "agents") {
      if (!v.is_array() || v.size() != kNumSeats) {
        BadConfig("agents must list exactly 4 agents");
      }
      for (int i = 0; i < kNumSeats; ++i) {
        if (!v[i].is_string()) BadConfig("agent names must be strings");
        c.lineup[i] = v[i].get<std::string>();
      }
    } else if (key == "rules") {
      c.rules = RuleConfigFromJson(v);
    } else if (key == "rotate_seats") {
      if (!v.is_boolean()) BadConfig("rotate_seats must be a boolean");
      c.rotate_seats = v.get<bool>();
    } else if (key == "out") {
      if (!v.is_string()) BadConfig("out must be a path string");
      c.output_dir = v.get<std::string>();
    } else if (key == "formats") {
      if (!v.is_array()) BadConfig("formats must be an array");
      c.write_jsonl = c.write_csv = false;
      for (const auto& f : v) {
        if (f == "jsonl") {
          c.write_jsonl = true;
        } else if (f == "csv") {
          c.write_csv = true;
        } else {
          BadConfig("unknown format " + f.dump());
        }
      }
    } else if (key == "parallel") {
      if (!v.is_number_integer()) BadConfig("parallel must be an integer");
      c.parallel = v.get<int>();
    } else if (key == "max_shifts") {
      if (!v.is_number_integer()) BadConfig("max_shifts must be an integer");
      max_shifts = v.get<int>();
    } else {
      BadConfig("unknown tournament key: " + key);
    }
  }
  if (max_shifts) c.rules.max_shifts = *max_shifts;
  Validate(c);
  return c;
}

Lineup SeatAgents(const TournamentConfig& config, int index,
                  std::array<int, kNumSeats>* lineup_index) {
  Lineup seats;
  for (Seat s = 0; s < kNumSeats; ++s) {
    const int shift = config.rotate_seats ? index % kNumSeats : 0;
    const int p = ((s - shift) % kNumSeats + kNumSeats) % kNumSeats;
    seats[s] = config.lineup[p];
    if (lineup_index) (*lineup_index)[s] = p;
  }
  return seats;
}

std::string LogFileName(int match_index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "match_%06d.jsonl", match_index);
  return buf;
}

TournamentStats RunTournament(const TournamentConfig& config,
                              const MatchHook& hook) {
  Validate(config);
  const auto started = std::chrono::steady_clock::now();
  if (config.output_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*config.output_dir, ec);
    if (ec) {
      throw Error(ErrorCode::kIo, "cannot create " + config.output_dir->string());
    }
  }

  TournamentStats stats;
  stats.matches.resize(config.matches);
  std::vector<std::string> failure_of(config.matches);
  std::atomic<int> next{0};

  auto worker = [&] {
    for (int i = next++; i < config.matches; i = next++) {
      MatchSummary& sum = stats.matches[i];
      std::array<int, kNumSeats> lineup_index{};
      const Lineup seats = SeatAgents(config, i, &lineup_index);
      const uint64_t seed = MatchSeed(config.master_seed, i);
      try {
        MatchResult r = RunMatch(config.rules, seats, seed,
                                 hook ? hook(i) : Match::Observer{});
        sum = r.summary;
        if (config.output_dir && config.write_jsonl) {
          WriteFile(*config.output_dir / LogFileName(i), ToJsonl(r.events));
        }
      } catch (const std::exception& e) {
        failure_of[i] = e.what();
        sum = MatchSummary{};
        sum.seed = seed;
        sum.seat_agents = seats;
      }
      sum.match_index = i;
      sum.seat_lineup_index = lineup_index;
    }
  };
  const int threads = std::min(config.parallel, config.matches);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::array<long long, kNumSeats> score_sum{};
  long long shift_sum = 0;
  for (const MatchSummary& m : stats.matches) {
    if (!failure_of[m.match_index].empty()) {
      stats.failures.push_back("match " + std::to_string(m.match_index) +
                               ": " + failure_of[m.match_index]);
      continue;
    }
    if (m.faults > 0) stats.faulted_matches.push_back(m.match_index);
    shift_sum += m.shifts;
    for (Seat s = 0; s < kNumSeats; ++s) {
      const int p = m.seat_lineup_index[s];
      score_sum[p] += m.scores[s];
      if (m.winner == s) ++stats.agents[p].wins;
    }
  }
  const double n = static_cast<double>(config.matches);
  for (int p = 0; p < kNumSeats; ++p) {
    AgentStats& a = stats.agents[p];
    a.name = config.lineup[p];
    a.win_rate = a.wins / n;
    a.mean_final_score = score_sum[p] / n;
    a.mean_shifts = shift_sum / n;
  }

  if (config.output_dir) {
    if (config.write_csv) {
      WriteFile(*config.output_dir / "matches.csv", MatchesCsv(stats));
      WriteFile(*config.output_dir / "agents.csv", AgentsCsv(stats));
    }
    WriteFile(*config.output_dir / "summary.json",
              ToJson(stats, /*include_matches=*/false).dump(2) + "\n");
  }
  stats.runtime_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - started)
                         .count();
  return stats;
}

std::string MatchesCsv(const TournamentStats& stats) {
  std::ostringstream out;
  out << "match,seed,seat0,seat1,seat2,seat3,winner_seat,winner_agent,"
         "end_reason,shifts,pizzas,plays,passes,pass_rate,special_actions,"
         "food_fights,dinners_served,faults,score0,score1,score2,score3\n";
  long long shifts = 0, pizzas = 0, plays = 0, passes = 0, specials = 0,
            food = 0, dinners = 0, faults = 0;
  for (const MatchSummary& m : stats.matches) {
    out << m.match_index << ',' << m.seed;
    for (const auto& a : m.seat_agents) out << ',' << a;
    if (m.winner) {
      out << ',' << *m.winner << ',' << m.seat_agents[*m.winner];
    } else {
      out << ",,";
    }
    out << ',' << EndReasonName(m.end_reason) << ',' << m.shifts << ','
        << m.pizzas << ',' << m.plays << ',' << m.passes << ','
        << FormatRate(m.pass_rate()) << ',' << m.special_actions << ','
        << m.food_fights << ',' << m.dinners_served << ',' << m.faults;
    for (int s : m.scores) out << ',' << s;
    out << '\n';
    shifts += m.shifts;
    pizzas += m.pizzas;
    plays += m.plays;
    passes += m.passes;
    specials += m.special_actions;
    food += m.food_fights;
    dinners += m.dinners_served;
    faults += m.faults;
  }
  const double rate =
      plays + passes == 0 ? 0.0 : static_cast<double>(passes) / (plays + passes);
  out << "total,,,,,,,,," << shifts << ',' << pizzas << ',' << plays << ','
      << passes << ',' << FormatRate(rate) << ',' << specials << ',' << food
      << ',' << dinners << ',' << faults << ",,,,\n";
  return out.str();
}

std::string AgentsCsv(const TournamentStats& stats) {
  std::ostringstream out;
  out << "lineup_index,agent,wins,win_rate,mean_final_score,mean_shifts\n";
  for (int p = 0; p < kNumSeats; ++p) {
    const AgentStats& a = stats.agents[p];
    out << p << ',' << a.name << ',' << a.wins << ',' << FormatRate(a.win_rate)
        << ',' << FormatRate(a.mean_final_score) << ','
        << FormatRate(a.mean_shifts) << '\n';
  }
  return out.str();
}

json ToJson(const TournamentStats& stats, bool include_matches) {
  json agents = json::array();
  for (const AgentStats& a : stats.agents) {
    agents.push_back({{"name", a.name},
                      {"wins", a.wins},
                      {"win_rate", a.win_rate},
                      {"mean_final_score", a.mean_final_score},
                      {"mean_shifts", a.mean_shifts}});
  }
  json out = {{"matches_played", stats.matches.size()},
              {"agents", agents},
              {"faulted_matches", stats.faulted_matches},
              {"failures", stats.failures}};
  if (include_matches) {
    json rows = json::array();
    for (const MatchSummary& m : stats.matches) {
      rows.push_back({{"match", m.match_index},
                      {"seed", m.seed},
                      {"seat_agents", m.seat_agents},
                      {"winner", m.winner ? json(*m.winner) : json(nullptr)},
                      {"end_reason", EndReasonName(m.end_reason)},
                      {"shifts", m.shifts},
                      {"pizzas", m.pizzas},
                      {"plays", m.plays},
                      {"passes", m.passes},
                      {"pass_rate", m.pass_rate()},
                      {"special_actions", m.special_actions},
                      {"food_fights", m.food_fights},
                      {"dinners_served", m.dinners_served},
                      {"faults", m.faults},
                      {"scores", m.scores}});
    }
    out["matches"] = rows;
  }
  return out;
}

}  // namespace chefshat
