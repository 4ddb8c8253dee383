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

#ifndef CHEFSHAT_CONFIG_HPP_
#define CHEFSHAT_CONFIG_HPP_

#include <array>
#include <optional>
#include <string_view>

#include "json.hpp"

namespace chefshat {

// Ordered from the top of the kitchen hierarchy down; finishing position N
// earns role N.
enum class RoleKind { kChef = 0, kSousChef = 1, kWaiter = 2, kDishwasher = 3 };

// Physical role attributes: A - Chef's hat, B - Sous-Chef's hat,
// C - Waiter's bow-tie, D - Dishwasher's cloth.
enum class Attribute { kChefHat, kSousChefHat, kBowTie, kCloth };

struct Role {
  RoleKind kind;
  int points_per_shift;
  Attribute attribute;
};

std::string_view RoleName(RoleKind kind);
std::optional<RoleKind> RoleFromName(std::string_view name);
std::string_view AttributeName(Attribute attribute);
Attribute AttributeOf(RoleKind kind);
// Chef <-> Dishwasher, SousChef <-> Waiter.
RoleKind Inverted(RoleKind kind);

enum class DishwasherGives { kHighest, kLowest };
enum class JokerMode {
  kFaceZero,  // Jokers are played only together, as face 0
  kWild,      // Jokers may also join an ingredient play as that face
};

struct RuleConfig {
  int target_score = 15;
  // Indexed by RoleKind.
  std::array<int, 4> role_points = {3, 2, 1, 0};
  int max_shifts = 50;
  DishwasherGives dishwasher_gives = DishwasherGives::kHighest;
  JokerMode joker_mode = JokerMode::kFaceZero;

  Role RoleOf(RoleKind kind) const {
    return Role{kind, role_points[static_cast<int>(kind)], AttributeOf(kind)};
  }

  friend bool operator==(const RuleConfig&, const RuleConfig&) = default;
};

// Throws Error(kInvalidConfig).
void Validate(const RuleConfig& config);

nlohmann::json ToJson(const RuleConfig& config);
// Missing keys take their defaults; unknown keys and bad values are rejected
// with Error(kInvalidConfig).
RuleConfig RuleConfigFromJson(const nlohmann::json& j);

}  // namespace chefshat

#endif  // CHEFSHAT_CONFIG_HPP_
