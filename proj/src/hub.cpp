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

#include "chefshat/hub.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <random>

#include "chefshat/agents.hpp"
#include "chefshat/error.hpp"
#include "chefshat/protocol.hpp"
#include "chefshat/simulator.hpp"
#include "chefshat/view.hpp"

namespace chefshat::server {

using nlohmann::json;
using protocol::MessageType;

namespace {

std::string RandomHex(int bytes) {
  static std::mutex mu;
  static std::random_device device;
  std::lock_guard lock(mu);
  std::string out;
  char buf[3];
  for (int i = 0; i < bytes; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", device() & 0xff);
    out += buf;
  }
  return out;
}

int64_t SteadyNowMs() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

struct Session {
  std::string token;
  std::mutex mu;  // guards the fields below
  std::optional<ConnectionId> conn;
  Sink sink;
  int64_t disconnected_at = 0;

  void Send(const std::string& frame) {
    std::lock_guard lock(mu);
    if (sink) sink(frame);
  }
  bool connected() {
    std::lock_guard lock(mu);
    return conn.has_value();
  }
};

enum class SeatKind { kOpen, kBot, kHuman };
enum class TableStatus { kLobby, kPlaying, kFinished };

std::string_view SeatKindName(SeatKind k) {
  switch (k) {
    case SeatKind::kOpen:
      return "open";
    case SeatKind::kBot:
      return "bot";
    case SeatKind::kHuman:
      return "human";
  }
  return "open";
}

std::string_view StatusName(TableStatus s) {
  switch (s) {
    case TableStatus::kLobby:
      return "lobby";
    case TableStatus::kPlaying:
      return "playing";
    case TableStatus::kFinished:
      return "finished";
  }
  return "lobby";
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

struct SeatSlot {
  SeatKind kind = SeatKind::kOpen;
  std::string agent;
  std::shared_ptr<Session> session;
  size_t public_sent = 0;  // public events already delivered
  std::optional<Decision> prompted;
  int64_t deadline = 0;
};

struct Table {
  std::mutex mu;  // the table's mailbox: every mutation happens under it
  std::string id;
  RuleConfig rules;
  uint64_t seed = 0;
  int64_t turn_timer_ms = 0;
  TableStatus status = TableStatus::kLobby;
  std::array<SeatSlot, kNumSeats> seats;
  std::optional<MatchDriver> driver;
  json auto_moves = json::array();  // notes for the next fan-out

  int seq() const {
    return driver ? driver->match().state().next_seq : 0;
  }
};

json SeatsJson(const Table& t) {
  json seats = json::array();
  for (Seat s = 0; s < kNumSeats; ++s) {
    json entry = {{"seat", s}, {"kind", SeatKindName(t.seats[s].kind)}};
    if (t.seats[s].kind == SeatKind::kBot) entry["agent"] = t.seats[s].agent;
    seats.push_back(entry);
  }
  return seats;
}

json TableStateJson(const Table& t) {
  return {{"table_id", t.id},
          {"status", StatusName(t.status)},
          {"seats", SeatsJson(t)},
          {"rules", ToJson(t.rules)},
          {"turn_timer_ms", t.turn_timer_ms}};
}

std::string ErrorFrame(std::string_view code, std::string_view message) {
  return protocol::Encode(MessageType::kError,
                          {{"code", code}, {"message", message}});
}

}  // namespace

json WireEvent(const Event& event) {
  json j = ToJson(event);
  if (event.kind() == EventKind::kMatchStarted) j["payload"]["seed"] = nullptr;
  return j;
}

struct Hub::Impl {
  HubOptions options;

  struct Connection {
    Sink sink;
    std::shared_ptr<Session> session;
  };

  mutable std::mutex mu;  // guards the maps; never held while locking a table
  ConnectionId next_conn = 1;
  std::map<ConnectionId, Connection> connections;
  std::map<std::string, std::shared_ptr<Session>> sessions;
  std::map<std::string, std::shared_ptr<Table>> tables;

  explicit Impl(HubOptions o) : options(std::move(o)) {
    if (!options.make_token) options.make_token = [] { return RandomHex(16); };
    if (!options.make_table_id) {
      options.make_table_id = [] { return "t" + RandomHex(8); };
    }
    if (!options.make_seed) {
      options.make_seed = [] {
        std::random_device d;
        return (static_cast<uint64_t>(d()) << 32) ^ d();
      };
    }
    if (!options.now_ms) options.now_ms = SteadyNowMs;
  }

  void SendTo(ConnectionId conn, const std::string& frame) {
    Sink sink;
    {
      std::lock_guard lock(mu);
      const auto it = connections.find(conn);
      if (it == connections.end()) return;
      sink = it->second.sink;
    }
    sink(frame);
  }

  std::shared_ptr<Session> SessionOf(ConnectionId conn) {
    std::lock_guard lock(mu);
    const auto it = connections.find(conn);
    return it == connections.end() ? nullptr : it->second.session;
  }

  std::shared_ptr<Table> FindTable(const json& body) {
    const auto id = body.find("table_id");
    if (id == body.end() || !id->is_string()) return nullptr;
    std::lock_guard lock(mu);
    const auto it = tables.find(id->get<std::string>());
    return it == tables.end() ? nullptr : it->second;
  }

  // --- table-side logic; the caller holds table.mu -------------------------

  void SendToSeat(Table& t, Seat seat, MessageType type, json body) {
    SeatSlot& slot = t.seats[seat];
    if (slot.kind != SeatKind::kHuman || !slot.session) return;
    body["table_id"] = t.id;
    body["seq"] = t.seq();
    slot.session->Send(protocol::Encode(type, std::move(body)));
  }

  void SendView(Table& t, Seat seat) {
    const Match& m = t.driver->match();
    SeatSlot& slot = t.seats[seat];
    json events = json::array();
    const auto& pub = m.public_log();
    for (size_t i = slot.public_sent; i < pub.size(); ++i) {
      events.push_back(WireEvent(pub[i]));
    }
    slot.public_sent = pub.size();
    json body = {{"view", ToJson(MakeView(m.state(), seat))},
                 {"events", std::move(events)}};
    if (!t.auto_moves.empty()) body["auto_moves"] = t.auto_moves;
    SendToSeat(t, seat, MessageType::kViewUpdate, std::move(body));
  }

  void SendPrompt(Table& t, const Decision& d) {
    const MatchState& s = t.driver->match().state();
    json deadline = t.turn_timer_ms > 0 ? json(t.turn_timer_ms) : json(nullptr);
    switch (d.kind) {
      case DecisionKind::kPlay: {
        json legal = json::array();
        for (const Action& a : LegalActions(s.pizza, s.hands[d.seat], d.seat,
                                            s.rules.joker_mode)) {
          legal.push_back(ToJson(a));
        }
        SendToSeat(t, d.seat, MessageType::kYourTurn,
                   {{"legal", legal}, {"deadline_ms", deadline}});
        break;
      }
      case DecisionKind::kExchangeReturn:
        SendToSeat(t, d.seat, MessageType::kExchangePrompt,
                   {{"count", d.count},
                    {"received", CardsJson(d.received)},
                    {"deadline_ms", deadline}});
        break;
      case DecisionKind::kSpecialAction:
        SendToSeat(t, d.seat, MessageType::kSpecialActionPrompt,
                   {{"kind", SpecialKindName(d.offered)},
                    {"deadline_ms", deadline}});
        break;
    }
  }

  void WriteLog(const Table& t) {
    if (!options.log_dir) return;
    std::error_code ec;
    std::filesystem::create_directories(*options.log_dir, ec);
    const auto path = *options.log_dir / (t.id + ".jsonl");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << ToJsonl(t.driver->match().log());
    if (!out) std::cerr << "chefshat: cannot write " << path << "\n";
  }

  // Lets bots move, then brings every human seat up to date.
  void Pump(Table& t) {
    const std::vector<Decision> open = t.driver->Run();
    for (Seat s = 0; s < kNumSeats; ++s) {
      if (t.seats[s].kind == SeatKind::kHuman) SendView(t, s);
    }
    t.auto_moves = json::array();
    const MatchState& st = t.driver->match().state();
    if (st.ended) {
      t.status = TableStatus::kFinished;
      for (Seat s = 0; s < kNumSeats; ++s) {
        t.seats[s].prompted.reset();
        SendToSeat(t, s, MessageType::kMatchEnded,
                   {{"winner", st.winner ? json(*st.winner) : json(nullptr)},
                    {"reason", EndReasonName(*st.end_reason)},
                    {"scores", st.scores}});
      }
      WriteLog(t);
      return;
    }
    const int64_t now = options.now_ms();
    for (Seat s = 0; s < kNumSeats; ++s) {
      SeatSlot& slot = t.seats[s];
      const auto d = std::find_if(open.begin(), open.end(),
                                  [s](const Decision& x) { return x.seat == s; });
      if (d == open.end()) {
        slot.prompted.reset();
        continue;
      }
      if (slot.prompted == *d) continue;
      slot.prompted = *d;
      slot.deadline = now + t.turn_timer_ms;
      SendPrompt(t, *d);
    }
  }

  void Start(Table& t) {
    t.status = TableStatus::kPlaying;
    t.driver.emplace(Match::New(t.rules, t.seed));
    for (Seat s = 0; s < kNumSeats; ++s) {
      if (t.seats[s].kind == SeatKind::kBot) {
        t.driver->SetAgent(s, MakeAgent(t.seats[s].agent, AgentSeed(t.seed, s)));
      }
    }
    Pump(t);
  }

  // Plays the timeout fallback for `seat`'s open decision.
  void AutoMove(Table& t, Seat seat, const Decision& d, std::string_view why) {
    const MatchState& s = t.driver->match().state();
    switch (d.kind) {
      case DecisionKind::kPlay:
        t.driver->SubmitPlay(
            seat,
            FallbackPlay(LegalActions(s.pizza, s.hands[seat], seat,
                                      s.rules.joker_mode)),
            /*forced=*/true);
        break;
      case DecisionKind::kExchangeReturn:
        t.driver->SubmitExchangeReturn(seat,
                                       FallbackReturn(s.hands[seat].cards, d.count));
        break;
      case DecisionKind::kSpecialAction:
        t.driver->SubmitSpecialAction(seat, false);
        break;
    }
    t.seats[seat].prompted.reset();
    t.auto_moves.push_back(
        {{"seat", seat}, {"decision", DecisionName(d.kind)}, {"reason", why}});
  }

  void HandOverToBot(Table& t, Seat seat) {
    SeatSlot& slot = t.seats[seat];
    slot.kind = SeatKind::kBot;
    slot.agent = options.takeover_agent;
    slot.session.reset();
    slot.prompted.reset();
    t.driver->SetAgent(seat, MakeAgent(slot.agent, AgentSeed(t.seed, seat)));
    t.auto_moves.push_back(
        {{"seat", seat}, {"decision", "takeover"}, {"reason", "disconnected"}});
  }

  // --- message handlers -----------------------------------------------------

  void OnHello(ConnectionId conn, const json& body) {
    std::shared_ptr<Session> session;
    bool resumed = false;
    {
      std::lock_guard lock(mu);
      auto cit = connections.find(conn);
      if (cit == connections.end()) return;
      const auto tok = body.find("token");
      if (tok != body.end() && tok->is_string()) {
        const auto sit = sessions.find(tok->get<std::string>());
        if (sit != sessions.end()) {
          session = sit->second;
          resumed = true;
        }
      }
      if (!session) {
        session = std::make_shared<Session>();
        session->token = options.make_token();
        sessions[session->token] = session;
      }
      {
        std::lock_guard slock(session->mu);
        if (session->conn && *session->conn != conn) {
          const auto old = connections.find(*session->conn);
          if (old != connections.end()) old->second.session.reset();
        }
        session->conn = conn;
        session->sink = cit->second.sink;
      }
      cit->second.session = session;
    }
    session->Send(protocol::Encode(
        MessageType::kHello, {{"token", session->token}, {"resumed", resumed}}));
    if (resumed) Resync(session);
  }

  // Re-sends the seat binding, a full view and any open prompt.
  void ResyncSeat(Table& t, Seat s) {
    SeatSlot& slot = t.seats[s];
    SendToSeat(t, s, MessageType::kSeatAssigned, {{"seat", s}});
    if (t.status != TableStatus::kPlaying) return;
    slot.public_sent = 0;
    SendView(t, s);
    if (slot.prompted) SendPrompt(t, *slot.prompted);
  }

  void Resync(const std::shared_ptr<Session>& session) {
    std::vector<std::shared_ptr<Table>> all;
    {
      std::lock_guard lock(mu);
      for (const auto& [id, t] : tables) all.push_back(t);
    }
    for (const auto& t : all) {
      std::lock_guard lock(t->mu);
      for (Seat s = 0; s < kNumSeats; ++s) {
        if (t->seats[s].session == session) ResyncSeat(*t, s);
      }
    }
  }

  void OnCreateTable(ConnectionId conn, const json& body) {
    auto t = std::make_shared<Table>();
    try {
      t->rules = options.default_rules;
      if (const auto r = body.find("rules"); r != body.end() && !r->is_null()) {
        t->rules = RuleConfigFromJson(*r);
      }
      t->turn_timer_ms = options.default_turn_timer_ms;
      if (const auto tt = body.find("turn_timer_ms"); tt != body.end()) {
        if (!tt->is_number_integer() || tt->get<long long>() < 0) {
          throw Error(ErrorCode::kInvalidConfig, "turn_timer_ms must be >= 0");
        }
        t->turn_timer_ms = tt->get<int64_t>();
      }
      if (const auto sd = body.find("seed"); sd != body.end()) {
        if (!sd->is_number_unsigned()) {
          throw Error(ErrorCode::kInvalidConfig, "seed must be unsigned");
        }
        t->seed = sd->get<uint64_t>();
      } else {
        t->seed = options.make_seed();
      }
      if (const auto bots = body.find("bots"); bots != body.end()) {
        if (!bots->is_array()) {
          throw Error(ErrorCode::kInvalidConfig, "bots must be an array");
        }
        for (const json& b : *bots) {
          if (!b.is_object() || !b.contains("seat") ||
              !b["seat"].is_number_integer() || !b.contains("agent") ||
              !b["agent"].is_string()) {
            throw Error(ErrorCode::kInvalidConfig,
                        "each bot needs an integer seat and an agent name");
          }
          const int seat = b["seat"].get<int>();
          const std::string agent = b["agent"].get<std::string>();
          if (seat < 0 || seat >= kNumSeats ||
              t->seats[seat].kind != SeatKind::kOpen) {
            throw Error(ErrorCode::kInvalidConfig, "bad or duplicate bot seat");
          }
          if (!IsKnownAgent(agent)) {
            throw Error(ErrorCode::kInvalidConfig, "unknown agent " + agent);
          }
          t->seats[seat].kind = SeatKind::kBot;
          t->seats[seat].agent = agent;
        }
      }
    } catch (const Error& e) {
      SendTo(conn, ErrorFrame(protocol::kInvalidConfig, e.what()));
      return;
    } catch (const json::exception& e) {
      SendTo(conn, ErrorFrame(protocol::kInvalidConfig, e.what()));
      return;
    }
    {
      std::lock_guard lock(mu);
      do {
        t->id = options.make_table_id();
      } while (tables.contains(t->id));
      tables[t->id] = t;
    }
    std::lock_guard lock(t->mu);
    SendTo(conn, protocol::Encode(MessageType::kTableState, TableStateJson(*t)));
    const bool full = std::all_of(t->seats.begin(), t->seats.end(),
                                  [](const SeatSlot& s) {
                                    return s.kind != SeatKind::kOpen;
                                  });
    if (full) Start(*t);
  }

  void OnJoinTable(ConnectionId conn, const std::shared_ptr<Session>& session,
                   const json& body) {
    const auto t = FindTable(body);
    if (!t) {
      SendTo(conn, ErrorFrame(protocol::kUnknownTable, "no such table"));
      return;
    }
    std::optional<int> wanted;
    if (const auto s = body.find("seat"); s != body.end() && !s->is_null()) {
      if (!s->is_number_integer()) {
        SendTo(conn, ErrorFrame(protocol::kBadMessage, "seat must be an integer"));
        return;
      }
      wanted = s->get<int>();
    }
    std::lock_guard lock(t->mu);
    for (Seat s = 0; s < kNumSeats; ++s) {
      if (t->seats[s].session == session) {  // rejoin
        ResyncSeat(*t, s);
        return;
      }
    }
    std::optional<Seat> seat;
    if (t->status == TableStatus::kLobby) {
      for (Seat s = 0; s < kNumSeats; ++s) {
        if (t->seats[s].kind == SeatKind::kOpen && (!wanted || *wanted == s)) {
          seat = s;
          break;
        }
      }
    }
    if (!seat) {
      SendTo(conn, ErrorFrame(protocol::kTableFull, "no open seat"));
      return;
    }
    SeatSlot& slot = t->seats[*seat];
    slot.kind = SeatKind::kHuman;
    slot.session = session;
    SendToSeat(*t, *seat, MessageType::kSeatAssigned, {{"seat", *seat}});
    const bool full = std::all_of(t->seats.begin(), t->seats.end(),
                                  [](const SeatSlot& s) {
                                    return s.kind != SeatKind::kOpen;
                                  });
    if (full) Start(*t);
  }

  void OnSubmit(ConnectionId conn, const std::shared_ptr<Session>& session,
                const json& body) {
    const auto t = FindTable(body);
    const std::string table_id =
        body.contains("table_id") && body["table_id"].is_string()
            ? body["table_id"].get<std::string>()
            : "";
    auto reject = [&](std::string_view reason, int seq) {
      SendTo(conn, protocol::Encode(MessageType::kActionRejected,
                                    {{"table_id", table_id},
                                     {"seq", seq},
                                     {"reason", reason}}));
    };
    if (!t) return reject(protocol::kUnknownTable, 0);
    std::lock_guard lock(t->mu);
    std::optional<Seat> seat;
    for (Seat s = 0; s < kNumSeats; ++s) {
      if (t->seats[s].session == session) seat = s;
    }
    if (!seat) return reject(protocol::kNotSeated, t->seq());
    if (t->status == TableStatus::kLobby) {
      return reject(ErrorCodeName(ErrorCode::kWrongPhase), t->seq());
    }
    if (t->status == TableStatus::kFinished) {
      return reject(ErrorCodeName(ErrorCode::kMatchAlreadyOver), t->seq());
    }
    const auto action = body.find("action");
    if (action == body.end() || !action->is_object() ||
        !action->contains("kind") || !(*action)["kind"].is_string()) {
      return reject("BAD_ACTION", t->seq());
    }
    const std::string kind = (*action)["kind"].get<std::string>();
    const MatchState& st = t->driver->match().state();
    try {
      if (kind == "play" || kind == "pass") {
        const Action a =
            ActionFromJson(*action, &st.hands[*seat], st.rules.joker_mode);
        t->driver->SubmitPlay(*seat, a);
      } else if (kind == "exchange_return") {
        const auto cards = action->find("cards");
        if (cards == action->end() || !cards->is_array()) {
          return reject("BAD_ACTION", t->seq());
        }
        std::vector<CardUid> uids;
        for (const json& c : *cards) {
          if (!c.is_number_integer()) return reject("BAD_ACTION", t->seq());
          uids.push_back(c.get<int>());
        }
        t->driver->SubmitExchangeReturn(*seat, std::move(uids));
      } else if (kind == "special_action") {
        const auto declare = action->find("declare");
        if (declare == action->end() || !declare->is_boolean()) {
          return reject("BAD_ACTION", t->seq());
        }
        t->driver->SubmitSpecialAction(*seat, declare->get<bool>());
      } else {
        return reject("BAD_ACTION", t->seq());
      }
    } catch (const IllegalActionError& e) {
      return reject(ReasonName(e.reason()), t->seq());
    } catch (const Error& e) {
      return reject(ErrorCodeName(e.code()), t->seq());
    }
    t->seats[*seat].prompted.reset();
    SendTo(conn, protocol::Encode(MessageType::kActionAccepted,
                                  {{"table_id", t->id}, {"seq", t->seq()}}));
    Pump(*t);
  }

  void OnMessage(ConnectionId conn, const protocol::Message& m) {
    if (m.type == MessageType::kPing) {
      SendTo(conn, protocol::Encode(MessageType::kPong, m.body));
      return;
    }
    if (m.type == MessageType::kHello) {
      OnHello(conn, m.body);
      return;
    }
    const auto session = SessionOf(conn);
    if (!session) {
      SendTo(conn, ErrorFrame(protocol::kNoSession, "send Hello first"));
      return;
    }
    switch (m.type) {
      case MessageType::kCreateTable:
        OnCreateTable(conn, m.body);
        break;
      case MessageType::kJoinTable:
        OnJoinTable(conn, session, m.body);
        break;
      case MessageType::kSubmitAction:
        OnSubmit(conn, session, m.body);
        break;
      default:
        SendTo(conn, ErrorFrame(protocol::kBadMessage,
                                std::string(protocol::MessageTypeName(m.type)) +
                                    " is a server message"));
        break;
    }
  }
};

Hub::Hub(HubOptions options)
    : impl_(std::make_unique<Impl>(std::move(options))) {}

Hub::~Hub() = default;

ConnectionId Hub::Connect(Sink sink) {
  std::lock_guard lock(impl_->mu);
  const ConnectionId id = impl_->next_conn++;
  impl_->connections[id] = Impl::Connection{std::move(sink), nullptr};
  return id;
}

void Hub::Receive(ConnectionId conn, std::string_view frame) {
  const protocol::Decoded d = protocol::Decode(frame);
  if (!d.message) {
    impl_->SendTo(conn, ErrorFrame(d.error, d.detail));
    return;
  }
  impl_->OnMessage(conn, *d.message);
}

void Hub::Disconnect(ConnectionId conn) {
  std::lock_guard lock(impl_->mu);
  const auto it = impl_->connections.find(conn);
  if (it == impl_->connections.end()) return;
  if (const auto& session = it->second.session) {
    std::lock_guard slock(session->mu);
    if (session->conn == conn) {
      session->conn.reset();
      session->sink = nullptr;
      session->disconnected_at = impl_->options.now_ms();
    }
  }
  impl_->connections.erase(it);
}

void Hub::Tick() {
  std::vector<std::shared_ptr<Table>> playing;
  {
    std::lock_guard lock(impl_->mu);
    for (const auto& [id, t] : impl_->tables) playing.push_back(t);
  }
  const int64_t now = impl_->options.now_ms();
  for (const auto& t : playing) {
    std::lock_guard lock(t->mu);
    if (t->status != TableStatus::kPlaying) continue;
    bool changed = false;
    for (Seat s = 0; s < kNumSeats; ++s) {
      SeatSlot& slot = t->seats[s];
      if (slot.kind != SeatKind::kHuman) continue;
      bool gone = false;
      {
        std::lock_guard slock(slot.session->mu);
        gone = !slot.session->conn &&
               now - slot.session->disconnected_at >=
                   impl_->options.reconnect_grace_ms;
      }
      if (gone) {
        impl_->HandOverToBot(*t, s);
        changed = true;
      }
    }
    if (t->turn_timer_ms > 0) {
      for (Seat s = 0; s < kNumSeats; ++s) {
        SeatSlot& slot = t->seats[s];
        if (slot.kind == SeatKind::kHuman && slot.prompted &&
            now >= slot.deadline) {
          impl_->AutoMove(*t, s, *slot.prompted, "timeout");
          changed = true;
        }
      }
    }
    if (changed) impl_->Pump(*t);
  }
}

HubCounts Hub::Counts() const {
  std::vector<std::shared_ptr<Table>> all;
  HubCounts c;
  {
    std::lock_guard lock(impl_->mu);
    for (const auto& [id, t] : impl_->tables) all.push_back(t);
    c.sessions = static_cast<int>(impl_->sessions.size());
    c.connections = static_cast<int>(impl_->connections.size());
  }
  for (const auto& t : all) {
    std::lock_guard lock(t->mu);
    switch (t->status) {
      case TableStatus::kLobby:
        ++c.lobby;
        break;
      case TableStatus::kPlaying:
        ++c.playing;
        break;
      case TableStatus::kFinished:
        ++c.finished;
        break;
    }
  }
  return c;
}

std::optional<std::vector<Event>> Hub::TableLog(
    const std::string& table_id) const {
  std::shared_ptr<Table> t;
  {
    std::lock_guard lock(impl_->mu);
    const auto it = impl_->tables.find(table_id);
    if (it == impl_->tables.end()) return std::nullopt;
    t = it->second;
  }
  std::lock_guard lock(t->mu);
  if (!t->driver) return std::nullopt;
  return t->driver->match().log();
}

}  // namespace chefshat::server
