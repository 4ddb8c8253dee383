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

#include "chefshat/chefshat.h"

#include <cstring>
#include <memory>
#include <optional>
#include <string>

#include "chefshat/error.hpp"
#include "chefshat/server.hpp"
#include "chefshat/simulator.hpp"
#include "chefshat/view.hpp"

using nlohmann::json;
using namespace chefshat;

struct chefshat_match {
  explicit chefshat_match(Match m) : driver(std::move(m)) {}
  MatchDriver driver;
};

struct chefshat_server {
  std::unique_ptr<server::Server> impl;
};

namespace {

thread_local std::string last_error;

chefshat_status StatusOf(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return CHEFSHAT_INVALID_ARGUMENT;
    case ErrorCode::kInvalidConfig:
      return CHEFSHAT_INVALID_CONFIG;
    case ErrorCode::kPlayerCountUnsupported:
      return CHEFSHAT_PLAYER_COUNT_UNSUPPORTED;
    case ErrorCode::kIllegalAction:
      return CHEFSHAT_ILLEGAL_ACTION;
    case ErrorCode::kCardsNotHeld:
      return CHEFSHAT_CARDS_NOT_HELD;
    case ErrorCode::kWrongPhase:
      return CHEFSHAT_WRONG_PHASE;
    case ErrorCode::kInvalidDeclaration:
      return CHEFSHAT_INVALID_DECLARATION;
    case ErrorCode::kMatchAlreadyOver:
      return CHEFSHAT_MATCH_ALREADY_OVER;
    case ErrorCode::kCorruptLog:
      return CHEFSHAT_CORRUPT_LOG;
    case ErrorCode::kAgentFault:
      return CHEFSHAT_AGENT_FAULT;
    case ErrorCode::kIo:
      return CHEFSHAT_IO;
  }
  return CHEFSHAT_INTERNAL;
}

chefshat_status Fail(chefshat_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
chefshat_status Guard(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const IllegalActionError& e) {
    return Fail(CHEFSHAT_ILLEGAL_ACTION, std::string(ReasonName(e.reason())));
  } catch (const Error& e) {
    return Fail(StatusOf(e.code()), e.what());
  } catch (const json::exception& e) {
    return Fail(CHEFSHAT_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return Fail(CHEFSHAT_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(CHEFSHAT_INTERNAL, e.what());
  }
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json ParseArg(const char* text, const char* what) {
  if (!text) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " is not JSON");
  }
  return j;
}

void Require(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
}

std::string_view DecisionName(DecisionKind k) {
  switch (k) {
    case DecisionKind::kPlay:
      return "play";
    case DecisionKind::kExchangeReturn:
      return "exchange_return";
    case DecisionKind::kSpecialAction:
      return "special_action";
  }
  return "play";
}

}  // namespace

extern "C" {

const char* chefshat_version(void) { return "1.0.0"; }

const char* chefshat_status_name(chefshat_status status) {
  switch (status) {
    case CHEFSHAT_OK:
      return "OK";
    case CHEFSHAT_INTERNAL:
      return "INTERNAL";
    default:
      break;
  }
  for (int c = 0; c <= static_cast<int>(ErrorCode::kIo); ++c) {
    if (StatusOf(static_cast<ErrorCode>(c)) == status) {
      return ErrorCodeName(static_cast<ErrorCode>(c)).data();
    }
  }
  return "UNKNOWN";
}

const char* chefshat_last_error(void) { return last_error.c_str(); }

void chefshat_string_free(char* s) { std::free(s); }

chefshat_status chefshat_match_new(const char* rules_json, uint64_t seed,
                                   chefshat_match** out) {
  return Guard([&] {
    Require(out, "out");
    *out = nullptr;
    RuleConfig rules;
    if (rules_json) rules = RuleConfigFromJson(ParseArg(rules_json, "rules_json"));
    auto m = std::make_unique<chefshat_match>(Match::New(rules, seed));
    m->driver.Run();
    *out = m.release();
    return CHEFSHAT_OK;
  });
}

void chefshat_match_free(chefshat_match* match) { delete match; }

chefshat_status chefshat_match_pending(const chefshat_match* match,
                                       char** out_json) {
  return Guard([&] {
    Require(match, "match");
    Require(out_json, "out_json");
    json out = json::array();
    for (const Decision& d : match->driver.Outstanding()) {
      json j = {{"kind", DecisionName(d.kind)}, {"seat", d.seat}};
      if (d.kind == DecisionKind::kSpecialAction) {
        j["offered"] = SpecialKindName(d.offered);
      } else if (d.kind == DecisionKind::kExchangeReturn) {
        j["count"] = d.count;
        j["received"] = d.received;
      }
      out.push_back(j);
    }
    *out_json = Dup(out.dump());
    return CHEFSHAT_OK;
  });
}

chefshat_status chefshat_match_view(const chefshat_match* match, int seat,
                                    char** out_json) {
  return Guard([&] {
    Require(match, "match");
    Require(out_json, "out_json");
    if (seat < 0 || seat >= kNumSeats) {
      return Fail(CHEFSHAT_INVALID_ARGUMENT, "seat must be 0..3");
    }
    *out_json = Dup(ToJson(MakeView(match->driver.match().state(), seat)).dump());
    return CHEFSHAT_OK;
  });
}

chefshat_status chefshat_match_state(const chefshat_match* match,
                                     char** out_json) {
  return Guard([&] {
    Require(match, "match");
    Require(out_json, "out_json");
    *out_json = Dup(CanonicalString(match->driver.match().state()));
    return CHEFSHAT_OK;
  });
}

chefshat_status chefshat_match_submit(chefshat_match* match, int seat,
                                      const char* action_json) {
  return Guard([&] {
    Require(match, "match");
    const json a = ParseArg(action_json, "action_json");
    if (seat < 0 || seat >= kNumSeats) {
      return Fail(CHEFSHAT_INVALID_ARGUMENT, "seat must be 0..3");
    }
    if (!a.is_object() || !a.contains("kind") || !a["kind"].is_string()) {
      return Fail(CHEFSHAT_INVALID_ARGUMENT, "action needs a string kind");
    }
    MatchDriver& d = match->driver;
    if (d.match().state().ended) {
      return Fail(CHEFSHAT_MATCH_ALREADY_OVER, "the match has ended");
    }
    const std::string kind = a["kind"];
    const MatchState& s = d.match().state();
    if (kind == "play" || kind == "pass") {
      d.SubmitPlay(seat, ActionFromJson(a, &s.hands[seat], s.rules.joker_mode));
    } else if (kind == "exchange_return") {
      d.SubmitExchangeReturn(seat, a.at("cards").get<std::vector<CardUid>>());
    } else if (kind == "special_action") {
      d.SubmitSpecialAction(seat, a.at("declare").get<bool>());
    } else {
      return Fail(CHEFSHAT_INVALID_ARGUMENT, "unknown action kind " + kind);
    }
    d.Run();
    return CHEFSHAT_OK;
  });
}

chefshat_status chefshat_match_is_over(const chefshat_match* match,
                                       int* out_over) {
  return Guard([&] {
    Require(match, "match");
    Require(out_over, "out_over");
    *out_over = match->driver.match().state().ended ? 1 : 0;
    return CHEFSHAT_OK;
  });
}

chefshat_status chefshat_match_log(const chefshat_match* match,
                                   char** out_jsonl) {
  return Guard([&] {
    Require(match, "match");
    Require(out_jsonl, "out_jsonl");
    *out_jsonl = Dup(ToJsonl(match->driver.match().log()));
    return CHEFSHAT_OK;
  });
}

chefshat_status chefshat_replay(const char* jsonl, char** out_state_json) {
  return Guard([&] {
    Require(jsonl, "jsonl");
    Require(out_state_json, "out_state_json");
    *out_state_json = Dup(CanonicalString(Replay(ParseJsonl(jsonl))));
    return CHEFSHAT_OK;
  });
}

chefshat_status chefshat_tournament_run(const char* config_json,
                                        char** out_stats_json) {
  return Guard([&] {
    Require(out_stats_json, "out_stats_json");
    *out_stats_json = nullptr;
    const json j = ParseArg(config_json, "config_json");
    const TournamentConfig config = TournamentConfigFromJson(j);
    const TournamentStats stats = RunTournament(config);
    json out = ToJson(stats, /*include_matches=*/false);
    out["runtime_ms"] = stats.runtime_ms;
    *out_stats_json = Dup(out.dump());
    if (stats.any_fault()) {
      return Fail(CHEFSHAT_AGENT_FAULT,
                  std::to_string(stats.faulted_matches.size() +
                                 stats.failures.size()) +
                      " match(es) recorded agent faults");
    }
    return CHEFSHAT_OK;
  });
}

chefshat_status chefshat_server_start(const char* config_json,
                                      chefshat_server** out) {
  return Guard([&] {
    Require(out, "out");
    *out = nullptr;
    const json j = config_json ? ParseArg(config_json, "config_json") : json::object();
    if (!j.is_object()) return Fail(CHEFSHAT_INVALID_CONFIG, "config must be an object");
    server::ServerOptions so;
    server::HubOptions ho;
    for (const auto& [key, v] : j.items()) {
      if (key == "host") {
        so.host = v.get<std::string>();
      } else if (key == "port") {
        const int port = v.get<int>();
        if (port < 0 || port > 65535) {
          return Fail(CHEFSHAT_INVALID_CONFIG, "port must be 0..65535");
        }
        so.port = static_cast<uint16_t>(port);
      } else if (key == "threads") {
        so.threads = v.get<int>();
      } else if (key == "logs") {
        if (!v.is_null()) ho.log_dir = v.get<std::string>();
      } else if (key == "turn_timer_ms") {
        ho.default_turn_timer_ms = v.get<int64_t>();
        if (ho.default_turn_timer_ms < 0) {
          return Fail(CHEFSHAT_INVALID_CONFIG, "turn_timer_ms must be >= 0");
        }
      } else if (key == "reconnect_grace_ms") {
        ho.reconnect_grace_ms = v.get<int64_t>();
      } else if (key == "rules") {
        if (!v.is_null()) ho.default_rules = RuleConfigFromJson(v);
      } else {
        return Fail(CHEFSHAT_INVALID_CONFIG, "unknown server key: " + key);
      }
    }
    auto s = std::make_unique<chefshat_server>();
    s->impl = std::make_unique<server::Server>(so, ho);
    s->impl->Start();
    *out = s.release();
    return CHEFSHAT_OK;
  });
}

int chefshat_server_port(const chefshat_server* server) {
  return server ? server->impl->port() : -1;
}

chefshat_status chefshat_server_stop(chefshat_server* server) {
  return Guard([&] {
    Require(server, "server");
    server->impl->Stop();
    return CHEFSHAT_OK;
  });
}

void chefshat_server_free(chefshat_server* server) { delete server; }

}  // extern "C"
