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

// Command-line front end. Everything goes through the C library.
//
//   chefshat simulate --matches N --seed S --agents a,b,c,d ...
//   chefshat serve --bind host:port --logs dir --turn-timer seconds ...
//   chefshat replay match.jsonl [--at SEQ]
//
// Every option can also be set from the environment as CHEFSHAT_<OPTION>,
// e.g. CHEFSHAT_MATCHES=100 or CHEFSHAT_TURN_TIMER=30. Flags win over the
// environment.
//
// Exit codes: 0 success, 1 configuration or I/O error, 2 agent fault.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chefshat/chefshat.h"
#include "json.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitFault = 2;

struct Failure {
  int exit_code;
  std::string message;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitConfig, "cannot read " + path};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json ReadRules(const std::string& path) {
  json rules = json::parse(ReadFile(path), nullptr, false);
  if (rules.is_discarded()) throw Failure{kExitConfig, path + " is not valid JSON"};
  return rules;
}

// Takes ownership of a string returned by the library.
std::string Own(char* s) {
  std::string out = s ? s : "";
  chefshat_string_free(s);
  return out;
}

[[noreturn]] void Raise(chefshat_status st) {
  throw Failure{st == CHEFSHAT_AGENT_FAULT ? kExitFault : kExitConfig,
                chefshat_last_error()};
}

// --- simulate ---------------------------------------------------------------

struct SimulateOptions {
  int matches = 1000;
  uint64_t seed = 0;
  std::vector<std::string> agents{"random", "random", "random", "random"};
  std::string rules;
  std::string out;
  std::vector<std::string> formats{"jsonl", "csv"};
  bool rotate_seats = false;
  int max_shifts = 0;
  int parallel = 1;
  bool json_summary = false;
};

void PrintTable(const json& stats) {
  std::printf("%-8s %-14s %6s %9s %11s %11s\n", "lineup", "agent", "wins",
              "win_rate", "mean_score", "mean_shifts");
  int index = 0;
  for (const json& a : stats.at("agents")) {
    std::printf("%-8d %-14s %6d %9.4f %11.3f %11.3f\n", index++,
                a.at("name").get<std::string>().c_str(), a.at("wins").get<int>(),
                a.at("win_rate").get<double>(), a.at("mean_final_score").get<double>(),
                a.at("mean_shifts").get<double>());
  }
}

int Simulate(const SimulateOptions& o) {
  json config = {{"matches", o.matches},      {"seed", o.seed},
                 {"agents", o.agents},        {"rotate_seats", o.rotate_seats},
                 {"formats", o.formats},      {"parallel", o.parallel}};
  if (!o.rules.empty()) config["rules"] = ReadRules(o.rules);
  if (!o.out.empty()) config["out"] = o.out;
  if (o.max_shifts > 0) config["max_shifts"] = o.max_shifts;

  char* raw = nullptr;
  const chefshat_status st = chefshat_tournament_run(config.dump().c_str(), &raw);
  const std::string stats_text = Own(raw);
  if (stats_text.empty()) Raise(st);

  const json stats = json::parse(stats_text);
  if (o.json_summary) {
    std::cout << stats.dump(2) << "\n";
  } else {
    PrintTable(stats);
    if (!o.out.empty()) std::printf("output written to %s\n", o.out.c_str());
  }
  if (st != CHEFSHAT_OK) Raise(st);
  return kExitOk;
}

// --- serve ------------------------------------------------------------------

struct ServeOptions {
  std::string bind = "127.0.0.1:7878";
  std::string logs;
  double turn_timer_s = 0.0;
  std::string rules;
  int threads = 1;
};

int Serve(const ServeOptions& o) {
  const auto colon = o.bind.rfind(':');
  if (colon == std::string::npos) throw Failure{kExitConfig, "--bind expects host:port"};
  std::string host = o.bind.substr(0, colon);
  if (host.size() >= 2 && host.front() == '[' && host.back() == ']') {
    host = host.substr(1, host.size() - 2);
  }
  int port = -1;
  try {
    port = std::stoi(o.bind.substr(colon + 1));
  } catch (const std::exception&) {
    throw Failure{kExitConfig, "bad port in --bind " + o.bind};
  }
  if (o.turn_timer_s < 0) throw Failure{kExitConfig, "--turn-timer must be >= 0"};

  json config = {{"host", host},
                 {"port", port},
                 {"threads", o.threads},
                 {"turn_timer_ms", static_cast<int64_t>(o.turn_timer_s * 1000.0 + 0.5)}};
  if (!o.logs.empty()) config["logs"] = o.logs;
  if (!o.rules.empty()) config["rules"] = ReadRules(o.rules);

  // Block the shutdown signals before any server thread exists, so only
  // sigwait below sees them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  chefshat_server* server = nullptr;
  const chefshat_status st = chefshat_server_start(config.dump().c_str(), &server);
  if (st != CHEFSHAT_OK) Raise(st);
  std::printf("listening on %s:%d (NDJSON, WebSocket, GET /health)\n", host.c_str(),
              chefshat_server_port(server));
  std::fflush(stdout);

  int received = 0;
  sigwait(&signals, &received);
  std::fprintf(stderr, "signal %d, shutting down\n", received);
  chefshat_server_stop(server);
  chefshat_server_free(server);
  return kExitOk;
}

// --- replay -----------------------------------------------------------------

int ReplayLog(const std::string& path, long at) {
  std::string text = ReadFile(path);
  if (at >= 0) {
    // Keep events 0..at, i.e. the first at + 1 lines.
    size_t pos = 0;
    for (long i = 0; i <= at && pos != std::string::npos; ++i) {
      pos = text.find('\n', pos);
      if (pos != std::string::npos) ++pos;
    }
    if (pos != std::string::npos) text.resize(pos);
  }
  char* raw = nullptr;
  const chefshat_status st = chefshat_replay(text.c_str(), &raw);
  if (st != CHEFSHAT_OK) Raise(st);
  std::cout << Own(raw) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chef's Hat engine: simulator, server and replay tool"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(chefshat_version()));

  SimulateOptions sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Run an agent tournament");
  simulate->add_option("--matches", sim.matches, "Number of matches")
      ->envname("CHEFSHAT_MATCHES")->check(CLI::PositiveNumber)->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Master seed")
      ->envname("CHEFSHAT_SEED")->capture_default_str();
  simulate->add_option("--agents", sim.agents, "Four agent names, lineup order")
      ->envname("CHEFSHAT_AGENTS")->delimiter(',')->expected(4)->capture_default_str();
  simulate->add_option("--rules", sim.rules, "Rule config JSON file")
      ->envname("CHEFSHAT_RULES");
  simulate->add_option("--out", sim.out, "Output directory for logs and tables")
      ->envname("CHEFSHAT_OUT");
  simulate->add_option("--format", sim.formats, "Outputs: jsonl, csv")
      ->envname("CHEFSHAT_FORMAT")->delimiter(',')->capture_default_str();
  simulate->add_flag("--rotate-seats", sim.rotate_seats, "Rotate the lineup every match")
      ->envname("CHEFSHAT_ROTATE_SEATS");
  simulate->add_option("--max-shifts", sim.max_shifts, "Override the shift cutoff")
      ->envname("CHEFSHAT_MAX_SHIFTS")->check(CLI::NonNegativeNumber);
  simulate->add_option("--parallel", sim.parallel, "Worker threads")
      ->envname("CHEFSHAT_PARALLEL")->check(CLI::PositiveNumber)->capture_default_str();
  simulate->add_flag("--json", sim.json_summary, "Print the summary as JSON");

  ServeOptions srv;
  CLI::App* serve = app.add_subcommand("serve", "Run the match server");
  serve->add_option("--bind", srv.bind, "host:port to listen on")
      ->envname("CHEFSHAT_BIND")->capture_default_str();
  serve->add_option("--logs", srv.logs, "Directory for finished match logs")
      ->envname("CHEFSHAT_LOGS");
  serve->add_option("--turn-timer", srv.turn_timer_s, "Seconds per decision, 0 = off")
      ->envname("CHEFSHAT_TURN_TIMER")->capture_default_str();
  serve->add_option("--rules", srv.rules, "Default rule config JSON file")
      ->envname("CHEFSHAT_RULES");
  serve->add_option("--threads", srv.threads, "I/O threads")
      ->envname("CHEFSHAT_THREADS")->check(CLI::PositiveNumber)->capture_default_str();

  std::string log_path;
  long at = -1;
  CLI::App* replay = app.add_subcommand("replay", "Rebuild the state a match log ends in");
  replay->add_option("log", log_path, "Event log (JSON Lines)")->required();
  replay->add_option("--at", at, "Stop after the event with this seq");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*simulate) return Simulate(sim);
    if (*serve) return Serve(srv);
    if (*replay) return ReplayLog(log_path, at);
  } catch (const Failure& f) {
    std::fprintf(stderr, "chefshat: %s\n", f.message.c_str());
    return f.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "chefshat: %s\n", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}
