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

// C interface to the Chef's Hat engine.
//
// Conventions:
//  * Every call returns a chefshat_status. On failure, chefshat_last_error()
//    describes the problem (thread-local, valid until the next call on the
//    same thread).
//  * Strings returned through `char**` are heap-allocated, NUL-terminated
//    UTF-8 and must be released with chefshat_string_free().
//  * Handles are opaque. A handle may be used from one thread at a time.
//  * JSON documents use the same field names as the event-log and wire
//    formats (see docs/FORMATS.md and docs/PROTOCOL.md).

#ifndef CHEFSHAT_CHEFSHAT_H_
#define CHEFSHAT_CHEFSHAT_H_

#include <stdint.h>

#if defined(_WIN32)
#define CHEFSHAT_API __declspec(dllexport)
#else
#define CHEFSHAT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum chefshat_status {
  CHEFSHAT_OK = 0,
  CHEFSHAT_INVALID_ARGUMENT = 1,
  CHEFSHAT_INVALID_CONFIG = 2,
  CHEFSHAT_PLAYER_COUNT_UNSUPPORTED = 3,
  CHEFSHAT_ILLEGAL_ACTION = 4,
  CHEFSHAT_CARDS_NOT_HELD = 5,
  CHEFSHAT_WRONG_PHASE = 6,
  CHEFSHAT_INVALID_DECLARATION = 7,
  CHEFSHAT_MATCH_ALREADY_OVER = 8,
  CHEFSHAT_CORRUPT_LOG = 9,
  CHEFSHAT_AGENT_FAULT = 10,
  CHEFSHAT_IO = 11,
  CHEFSHAT_INTERNAL = 12
} chefshat_status;

typedef struct chefshat_match chefshat_match;
typedef struct chefshat_server chefshat_server;

CHEFSHAT_API const char* chefshat_version(void);
CHEFSHAT_API const char* chefshat_status_name(chefshat_status status);
CHEFSHAT_API const char* chefshat_last_error(void);
CHEFSHAT_API void chefshat_string_free(char* s);

// --- single matches -------------------------------------------------------
// Every seat is driven by the caller. `rules_json` may be NULL for the
// default rules.
CHEFSHAT_API chefshat_status chefshat_match_new(const char* rules_json,
                                                uint64_t seed,
                                                chefshat_match** out);
CHEFSHAT_API void chefshat_match_free(chefshat_match* match);

// JSON array of open decisions:
//   [{"kind":"play"|"exchange_return"|"special_action","seat":n,...}]
// Empty once the match has ended.
CHEFSHAT_API chefshat_status chefshat_match_pending(const chefshat_match* match,
                                                    char** out_json);
// The redacted view of one seat.
CHEFSHAT_API chefshat_status chefshat_match_view(const chefshat_match* match,
                                                 int seat, char** out_json);
// Full state in canonical serialization.
CHEFSHAT_API chefshat_status chefshat_match_state(const chefshat_match* match,
                                                  char** out_json);
// Answers an open decision. `action_json` is one of
//   {"kind":"play","face":f,"count":c[,"cards":[uids]]}
//   {"kind":"pass"}
//   {"kind":"exchange_return","cards":[uids]}
//   {"kind":"special_action","declare":true|false}
// Rejections leave the match unchanged; the legality reason (for example
// NOT_RARER) is reported by chefshat_last_error().
CHEFSHAT_API chefshat_status chefshat_match_submit(chefshat_match* match,
                                                   int seat,
                                                   const char* action_json);
CHEFSHAT_API chefshat_status chefshat_match_is_over(const chefshat_match* match,
                                                    int* out_over);
// The full event log as JSON Lines.
CHEFSHAT_API chefshat_status chefshat_match_log(const chefshat_match* match,
                                                char** out_jsonl);

// Rebuilds the final state of a JSON Lines log (canonical JSON).
CHEFSHAT_API chefshat_status chefshat_replay(const char* jsonl,
                                             char** out_state_json);

// --- tournaments ------------------------------------------------------------
// `config_json` keys: matches, seed, agents[4], rules, rotate_seats, out,
// formats, parallel, max_shifts. The result holds per-agent totals (per-match
// rows go to the output directory). Returns CHEFSHAT_AGENT_FAULT (with stats
// still filled in) when any match recorded an agent fault.
CHEFSHAT_API chefshat_status chefshat_tournament_run(const char* config_json,
                                                     char** out_stats_json);

// --- game server ----------------------------------------------------------
// `config_json` keys (all optional): host, port, logs, turn_timer_ms,
// reconnect_grace_ms, rules, threads. The server runs on background threads.
CHEFSHAT_API chefshat_status chefshat_server_start(const char* config_json,
                                                   chefshat_server** out);
CHEFSHAT_API int chefshat_server_port(const chefshat_server* server);
CHEFSHAT_API chefshat_status chefshat_server_stop(chefshat_server* server);
CHEFSHAT_API void chefshat_server_free(chefshat_server* server);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // CHEFSHAT_CHEFSHAT_H_
