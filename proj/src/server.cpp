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

#include "chefshat/server.hpp"

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <condition_variable>
#include <deque>
#include <iostream>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "chefshat/error.hpp"
#include "chefshat/protocol.hpp"

namespace chefshat::server {

namespace net = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;

namespace {

std::string HealthJson(const HubCounts& c) {
  return nlohmann::json{{"status", "ok"},
                        {"protocol_version", protocol::kVersion},
                        {"tables",
                         {{"lobby", c.lobby},
                          {"playing", c.playing},
                          {"finished", c.finished}}},
                        {"sessions", c.sessions},
                        {"connections", c.connections}}
      .dump();
}

// One client connection. Reads happen on the connection's strand; the hub
// may hand it frames from any thread, which are posted onto the strand.
class Peer : public std::enable_shared_from_this<Peer> {
 public:
  Peer(tcp::socket socket, Hub& hub)
      : stream_(std::move(socket)), hub_(hub) {
    beast::error_code ignored;
    stream_.socket().set_option(tcp::no_delay(true), ignored);
  }

  void Run() {
    stream_.async_read_some(
        buffer_.prepare(512),
        beast::bind_front_handler(&Peer::OnFirstBytes, shared_from_this()));
  }

 private:
  enum class Mode { kUnknown, kLines, kWebSocket };

  void OnFirstBytes(beast::error_code ec, size_t n) {
    if (ec) return;
    buffer_.commit(n);
    const auto data = static_cast<const char*>(buffer_.data().data());
    if (buffer_.size() > 0 && data[0] == 'G') {
      http::async_read(
          stream_, buffer_, request_,
          beast::bind_front_handler(&Peer::OnRequest, shared_from_this()));
    } else {
      mode_ = Mode::kLines;
      Register();
      DrainLines();
    }
  }

  void Register() {
    std::weak_ptr<Peer> weak = shared_from_this();
    auto executor = stream_.get_executor();
    conn_ = hub_.Connect([weak, executor](std::string frame) {
      net::post(executor, [weak, frame = std::move(frame)]() mutable {
        if (auto self = weak.lock()) self->Queue(std::move(frame));
      });
    });
    registered_ = true;
  }

  void OnRequest(beast::error_code ec, size_t) {
    if (ec) return;
    if (websocket::is_upgrade(request_)) {
      ws_.emplace(std::move(stream_));
      ws_->set_option(
          websocket::stream_base::timeout::suggested(beast::role_type::server));
      ws_->read_message_max(protocol::kMaxFrameBytes);
      ws_->async_accept(request_, beast::bind_front_handler(
                                      &Peer::OnAccept, shared_from_this()));
      return;
    }
    auto res = std::make_shared<http::response<http::string_body>>();
    res->version(request_.version());
    res->keep_alive(false);
    if (request_.method() == http::verb::get && request_.target() == "/health") {
      res->result(http::status::ok);
      res->set(http::field::content_type, "application/json");
      res->body() = HealthJson(hub_.Counts());
    } else {
      res->result(http::status::not_found);
      res->set(http::field::content_type, "text/plain");
      res->body() = "not found\n";
    }
    res->prepare_payload();
    http::async_write(stream_, *res,
                      [self = shared_from_this(), res](beast::error_code, size_t) {
                        beast::error_code ignored;
                        self->stream_.socket().shutdown(tcp::socket::shutdown_send,
                                                        ignored);
                      });
  }

  void OnAccept(beast::error_code ec) {
    if (ec) return;
    mode_ = Mode::kWebSocket;
    buffer_.consume(buffer_.size());
    Register();
    ReadMessage();
  }

  void ReadMessage() {
    ws_->async_read(buffer_, beast::bind_front_handler(&Peer::OnMessage,
                                                       shared_from_this()));
  }

  void OnMessage(beast::error_code ec, size_t) {
    if (ec) return Close();
    const std::string text = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    hub_.Receive(conn_, text);
    ReadMessage();
  }

  // Hands every complete line in the buffer to the hub, then reads more.
  void DrainLines() {
    for (;;) {
      const auto data = static_cast<const char*>(buffer_.data().data());
      const std::string_view view(data, buffer_.size());
      const size_t nl = view.find('\n');
      if (nl == std::string_view::npos) break;
      std::string_view line = view.substr(0, nl);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!line.empty()) hub_.Receive(conn_, line);
      buffer_.consume(nl + 1);
    }
    if (buffer_.size() > protocol::kMaxFrameBytes) {
      Queue(protocol::Encode(protocol::MessageType::kError,
                             {{"code", protocol::kFrameTooLarge},
                              {"message", "frame exceeds 1 MiB"}}));
      closing_ = true;
      return;
    }
    stream_.async_read_some(
        buffer_.prepare(4096),
        beast::bind_front_handler(&Peer::OnLineBytes, shared_from_this()));
  }

  void OnLineBytes(beast::error_code ec, size_t n) {
    if (ec) return CloseWhenFlushed();
    buffer_.commit(n);
    DrainLines();
  }

  void Queue(std::string frame) {
    if (mode_ == Mode::kLines) frame += '\n';
    outbox_.push_back(std::move(frame));
    if (outbox_.size() == 1) WriteNext();
  }

  void WriteNext() {
    auto done = beast::bind_front_handler(&Peer::OnWrite, shared_from_this());
    if (mode_ == Mode::kWebSocket) {
      ws_->text(true);
      ws_->async_write(net::buffer(outbox_.front()), std::move(done));
    } else {
      net::async_write(stream_, net::buffer(outbox_.front()), std::move(done));
    }
  }

  void OnWrite(beast::error_code ec, size_t) {
    if (ec) return Close();
    outbox_.pop_front();
    if (!outbox_.empty()) {
      WriteNext();
    } else if (closing_) {
      Close();
    }
  }

  // The peer stopped sending; deliver what is queued, then close.
  void CloseWhenFlushed() {
    if (outbox_.empty()) return Close();
    closing_ = true;
  }

  void Close() {
    if (registered_) {
      registered_ = false;
      hub_.Disconnect(conn_);
    }
    beast::error_code ignored;
    if (ws_) {
      beast::get_lowest_layer(*ws_).socket().close(ignored);
    } else {
      stream_.socket().close(ignored);
    }
  }

 public:
  ~Peer() {
    if (registered_) hub_.Disconnect(conn_);
  }

 private:
  beast::tcp_stream stream_;
  std::optional<websocket::stream<beast::tcp_stream>> ws_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> request_;
  Hub& hub_;
  ConnectionId conn_ = 0;
  bool registered_ = false;
  bool closing_ = false;
  Mode mode_ = Mode::kUnknown;
  std::deque<std::string> outbox_;
};

}  // namespace

struct Server::Impl {
  ServerOptions options;
  Hub hub;  // declared first: outlives the io_context and its handlers
  net::io_context ioc;
  tcp::acceptor acceptor{ioc};
  net::steady_timer ticker{ioc};
  std::vector<std::thread> threads;
  std::optional<net::executor_work_guard<net::io_context::executor_type>> work;
  uint16_t bound_port = 0;
  std::mutex mu;
  std::condition_variable stopped_cv;
  bool running = false;

  Impl(ServerOptions o, HubOptions h) : options(std::move(o)), hub(std::move(h)) {}

  void Accept() {
    acceptor.async_accept(net::make_strand(ioc),
                          [this](beast::error_code ec, tcp::socket socket) {
                            if (ec) {
                              if (ec == net::error::operation_aborted) return;
                            } else {
                              std::make_shared<Peer>(std::move(socket), hub)->Run();
                            }
                            Accept();
                          });
  }

  void Tick() {
    ticker.expires_after(std::chrono::milliseconds(options.tick_ms));
    ticker.async_wait([this](beast::error_code ec) {
      if (ec) return;
      hub.Tick();
      Tick();
    });
  }
};

Server::Server(ServerOptions options, HubOptions hub_options)
    : impl_(std::make_unique<Impl>(std::move(options), std::move(hub_options))) {}

Server::~Server() { Stop(); }

void Server::Start() {
  Impl& s = *impl_;
  std::lock_guard lock(s.mu);
  if (s.running) return;
  try {
    const tcp::endpoint ep(net::ip::make_address(s.options.host), s.options.port);
    s.acceptor.open(ep.protocol());
    s.acceptor.set_option(net::socket_base::reuse_address(true));
    s.acceptor.bind(ep);
    s.acceptor.listen(net::socket_base::max_listen_connections);
    s.bound_port = s.acceptor.local_endpoint().port();
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kIo, "cannot listen on " + s.options.host + ":" +
                                    std::to_string(s.options.port) + ": " +
                                    e.what());
  }
  s.work.emplace(net::make_work_guard(s.ioc));
  s.Accept();
  s.Tick();
  const int n = std::max(1, s.options.threads);
  for (int i = 0; i < n; ++i) s.threads.emplace_back([&s] { s.ioc.run(); });
  s.running = true;
}

uint16_t Server::port() const { return impl_->bound_port; }

void Server::Stop() {
  Impl& s = *impl_;
  {
    std::lock_guard lock(s.mu);
    if (!s.running) return;
    s.running = false;
  }
  s.work.reset();
  s.ioc.stop();
  for (std::thread& t : s.threads) {
    if (t.joinable()) t.join();
  }
  s.threads.clear();
  // No handler runs any more; release the port right away.
  beast::error_code ignored;
  s.acceptor.close(ignored);
  s.ticker.cancel();
  s.stopped_cv.notify_all();
}

void Server::Wait() {
  std::unique_lock lock(impl_->mu);
  impl_->stopped_cv.wait(lock, [this] { return !impl_->running; });
}

Hub& Server::hub() { return impl_->hub; }

}  // namespace chefshat::server
