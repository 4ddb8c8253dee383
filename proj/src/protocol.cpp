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

#include "chefshat/protocol.hpp"

#include <array>

namespace chefshat::protocol {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 16> kNames = {
    "Hello",          "CreateTable",    "JoinTable",
    "SeatAssigned",   "TableState",     "YourTurn",
    "SubmitAction",   "ActionAccepted", "ActionRejected",
    "ViewUpdate",     "ExchangePrompt", "SpecialActionPrompt",
    "MatchEnded",     "Error",          "Ping",
    "Pong",
};

Decoded Fail(std::string_view code, std::string detail) {
  return Decoded{std::nullopt, std::string(code), std::move(detail)};
}

}  // namespace

std::string_view MessageTypeName(MessageType type) {
  return kNames[static_cast<size_t>(type)];
}

std::optional<MessageType> MessageTypeFromName(std::string_view name) {
  for (size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<MessageType>(i);
  }
  return std::nullopt;
}

std::string Encode(const Message& message) {
  json frame = {{"type", MessageTypeName(message.type)},
                {"protocol_version", kVersion},
                {"body", message.body}};
  return frame.dump();
}

Decoded Decode(std::string_view frame) {
  if (frame.size() > kMaxFrameBytes) {
    return Fail(kFrameTooLarge, "frame exceeds 1 MiB");
  }
  json j = json::parse(frame, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    return Fail(kBadMessage, "frame is not a JSON object");
  }
  const auto version = j.find("protocol_version");
  if (version == j.end() || !version->is_number_integer()) {
    return Fail(kBadMessage, "protocol_version is required");
  }
  if (version->get<long long>() != kVersion) {
    return Fail(kUnsupportedVersion,
                "server speaks protocol_version " + std::to_string(kVersion));
  }
  const auto type = j.find("type");
  if (type == j.end() || !type->is_string()) {
    return Fail(kBadMessage, "type is required");
  }
  const auto kind = MessageTypeFromName(type->get<std::string>());
  if (!kind) return Fail(kBadMessage, "unknown type " + type->dump());
  Message m{*kind, json::object()};
  if (const auto body = j.find("body"); body != j.end() && !body->is_null()) {
    if (!body->is_object()) return Fail(kBadMessage, "body must be an object");
    m.body = *body;
  }
  return Decoded{std::move(m), {}, {}};
}

}  // namespace chefshat::protocol
