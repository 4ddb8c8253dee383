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

#include "chefshat/config.hpp"

#include <string>

#include "chefshat/error.hpp"

namespace chefshat {
namespace {

constexpr std::array<std::string_view, 4> kRoleNames = {
    "Chef", "SousChef", "Waiter", "Dishwasher"};
constexpr std::array<std::string_view, 4> kAttributeNames = {
    "ChefHat", "SousChefHat", "BowTie", "Cloth"};

constexpr int kMaxPoints = 1000;
constexpr int kMaxShiftLimit = 100000;

[[noreturn]] void Invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidConfig, what);
}

int ReadInt(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) Invalid(std::string(key) + " must be an integer");
  return v.get<int>();
}

}  // namespace

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::kInvalidConfig: return "INVALID_CONFIG";
    case ErrorCode::kPlayerCountUnsupported: return "PLAYER_COUNT_UNSUPPORTED";
    case ErrorCode::kIllegalAction: return "ILLEGAL_ACTION";
    case ErrorCode::kCardsNotHeld: return "CARDS_NOT_HELD";
    case ErrorCode::kWrongPhase: return "WRONG_PHASE";
    case ErrorCode::kInvalidDeclaration: return "INVALID_DECLARATION";
    case ErrorCode::kMatchAlreadyOver: return "MATCH_ALREADY_OVER";
    case ErrorCode::kCorruptLog: return "CORRUPT_LOG";
    case ErrorCode::kAgentFault: return "AGENT_FAULT";
    case ErrorCode::kIo: return "IO_ERROR";
  }
  return "UNKNOWN";
}

std::string_view RoleName(RoleKind kind) {
  return kRoleNames[static_cast<int>(kind)];
}

std::optional<RoleKind> RoleFromName(std::string_view name) {
  for (int i = 0; i < 4; ++i) {
    if (kRoleNames[i] == name) return static_cast<RoleKind>(i);
  }
  return std::nullopt;
}

std::string_view AttributeName(Attribute attribute) {
  return kAttributeNames[static_cast<int>(attribute)];
}

Attribute AttributeOf(RoleKind kind) {
  return static_cast<Attribute>(static_cast<int>(kind));
}

RoleKind Inverted(RoleKind kind) {
  return static_cast<RoleKind>(3 - static_cast<int>(kind));
}

void Validate(const RuleConfig& config) {
  if (config.target_score < 1) Invalid("target_score must be >= 1");
  if (config.max_shifts < 1 || config.max_shifts > kMaxShiftLimit) {
    Invalid("max_shifts must be in [1, " + std::to_string(kMaxShiftLimit) + "]");
  }
  for (int p : config.role_points) {
    if (p < 0 || p > kMaxPoints) {
      Invalid("role_points must be in [0, " + std::to_string(kMaxPoints) + "]");
    }
  }
}

nlohmann::json ToJson(const RuleConfig& config) {
  nlohmann::json j;
  j["target_score"] = config.target_score;
  j["role_points"] = config.role_points;
  j["max_shifts"] = config.max_shifts;
  j["exchange_dishwasher_gives"] =
      config.dishwasher_gives == DishwasherGives::kHighest ? "highest" : "lowest";
  j["joker_mode"] = config.joker_mode == JokerMode::kFaceZero ? "face0" : "wild";
  return j;
}

RuleConfig RuleConfigFromJson(const nlohmann::json& j) {
  if (!j.is_object()) Invalid("rule config must be a JSON object");
  RuleConfig config;
  for (const auto& [key, value] : j.items()) {
    if (key == "target_score") {
      config.target_score = ReadInt(j, "target_score");
    } else if (key == "max_shifts") {
      config.max_shifts = ReadInt(j, "max_shifts");
    } else if (key == "role_points") {
      if (!value.is_array() || value.size() != 4) {
        Invalid("role_points must be an array of 4 integers");
      }
      for (int i = 0; i < 4; ++i) {
        if (!value[i].is_number_integer()) Invalid("role_points must be integers");
        config.role_points[i] = value[i].get<int>();
      }
    } else if (key == "exchange_dishwasher_gives") {
      if (value == "highest") {
        config.dishwasher_gives = DishwasherGives::kHighest;
      } else if (value == "lowest") {
        config.dishwasher_gives = DishwasherGives::kLowest;
      } else {
        Invalid("exchange_dishwasher_gives must be \"highest\" or \"lowest\"");
      }
    } else if (key == "joker_mode") {
      if (value == "face0") {
        config.joker_mode = JokerMode::kFaceZero;
      } else if (value == "wild") {
        config.joker_mode = JokerMode::kWild;
      } else {
        Invalid("joker_mode must be \"face0\" or \"wild\"");
      }
    } else {
      Invalid("unknown rule config key: " + key);
    }
  }
  Validate(config);
  return config;
}

}  // namespace chefshat
