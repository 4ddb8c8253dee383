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

// Wire messages shared by every transport. A frame is one JSON object:
//   {"type": <name>, "protocol_version": 1, "body": {...}}
// serialized compactly with sorted keys, one frame per line (plain TCP) or
// per text message (WebSocket).

#ifndef CHEFSHAT_PROTOCOL_HPP_
#define CHEFSHAT_PROTOCOL_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace chefshat::protocol {

inline constexpr int kVersion = 1;
// Frames longer than this are rejected and the connection is closed.
inline constexpr size_t kMaxFrameBytes = 1 << 20;

enum class MessageType {
  kHello,
  kCreateTable,
  kJoinTable,
  kSeatAssigned,
  kTableState,
  kYourTurn,
  kSubmitAction,
  kActionAccepted,
  kActionRejected,
  kViewUpdate,
  kExchangePrompt,
  kSpecialActionPrompt,
  kMatchEnded,
  kError,
  kPing,
  kPong,
};

std::string_view MessageTypeName(MessageType type);
std::optional<MessageType> MessageTypeFromName(std::string_view name);

// Error codes carried by Error frames.
inline constexpr std::string_view kUnsupportedVersion = "UNSUPPORTED_VERSION";
inline constexpr std::string_view kBadMessage = "BAD_MESSAGE";
inline constexpr std::string_view kNoSession = "NO_SESSION";
inline constexpr std::string_view kUnknownTable = "UNKNOWN_TABLE";
inline constexpr std::string_view kTableFull = "TABLE_FULL";
inline constexpr std::string_view kNotSeated = "NOT_SEATED";
inline constexpr std::string_view kInvalidConfig = "INVALID_CONFIG";
inline constexpr std::string_view kFrameTooLarge = "FRAME_TOO_LARGE";

struct Message {
  MessageType type = MessageType::kPing;
  nlohmann::json body = nlohmann::json::object();
};

std::string Encode(const Message& message);
inline std::string Encode(MessageType type, nlohmann::json body) {
  return Encode(Message{type, std::move(body)});
}

// Outcome of decoding one inbound frame. When `message` is empty, `error`
// names the Error code to send back and `detail` explains it.
struct Decoded {
  std::optional<Message> message;
  std::string error;
  std::string detail;
};

Decoded Decode(std::string_view frame);

}  // namespace chefshat::protocol

#endif  // CHEFSHAT_PROTOCOL_HPP_
