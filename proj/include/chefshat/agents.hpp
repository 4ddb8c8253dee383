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

#ifndef CHEFSHAT_AGENTS_HPP_
#define CHEFSHAT_AGENTS_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chefshat/view.hpp"

namespace chefshat {

// The policy seam. One instance is bound to one seat of one match and is
// only called from that match's context. The engine re-validates every
// answer.
class AgentPolicy {
 public:
  virtual ~AgentPolicy() = default;

  virtual std::string_view name() const = 0;
  virtual Action DecidePlay(const PlayerView& view) = 0;
  // Returns `count` uids from view.own_hand.
  virtual std::vector<CardUid> DecideExchangeReturn(
      const PlayerView& view, std::span<const CardUid> received, int count) = 0;
  virtual bool DecideSpecialAction(const PlayerView& view,
                                   SpecialKind offered) = 0;
};

// Uniform over view.legal.
std::unique_ptr<AgentPolicy> MakeRandomAgent(uint64_t seed);
// Sheds the most cards it can, keeping rare faces when counts tie.
std::unique_ptr<AgentPolicy> MakeGreedyAgent(uint64_t seed);
// Plays the fewest cards it can, commonest face first, and hoards Jokers.
std::unique_ptr<AgentPolicy> MakeConservativeAgent(uint64_t seed);

// "random", "greedy" or "conservative"; throws Error(kInvalidConfig).
std::unique_ptr<AgentPolicy> MakeAgent(std::string_view name, uint64_t seed);
bool IsKnownAgent(std::string_view name);

// Move made for a seat that faulted or timed out: Pass when legal, otherwise
// the first play in canonical order.
Action FallbackPlay(const std::vector<Action>& legal);
// Exchange answer made on a seat's behalf: its highest faces.
std::vector<CardUid> FallbackReturn(const CardSet& hand, int count);

}  // namespace chefshat

#endif  // CHEFSHAT_AGENTS_HPP_
