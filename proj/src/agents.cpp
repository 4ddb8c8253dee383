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

#include "chefshat/agents.hpp"

#include <algorithm>
#include <string>

#include "chefshat/rng.hpp"

namespace chefshat {
namespace {

std::vector<const Action*> Plays(const std::vector<Action>& legal) {
  std::vector<const Action*> out;
  for (const Action& a : legal) {
    if (a.is_play()) out.push_back(&a);
  }
  return out;
}

bool PassIsLegal(const std::vector<Action>& legal) {
  return !legal.empty() && legal.back().is_pass();
}

class RandomAgent : public AgentPolicy {
 public:
  explicit RandomAgent(uint64_t seed) : rng_(seed) {}

  std::string_view name() const override { return "random"; }

  Action DecidePlay(const PlayerView& view) override {
    if (view.legal.empty()) return Action::Pass();
    return view.legal[rng_.Below(view.legal.size())];
  }

  std::vector<CardUid> DecideExchangeReturn(const PlayerView& view,
                                            std::span<const CardUid>,
                                            int count) override {
    std::vector<CardUid> uids;
    for (const Card& c : view.own_hand) uids.push_back(c.uid);
    Shuffle(std::span<CardUid>(uids), rng_);
    uids.resize(std::min<size_t>(uids.size(), count));
    return uids;
  }

  bool DecideSpecialAction(const PlayerView&, SpecialKind) override {
    return rng_.Below(2) == 1;
  }

 private:
  Xoshiro256 rng_;
};

class GreedyAgent : public AgentPolicy {
 public:
  std::string_view name() const override { return "greedy"; }

  Action DecidePlay(const PlayerView& view) override {
    const Action* best = nullptr;
    for (const Action* a : Plays(view.legal)) {
      if (best == nullptr || a->count > best->count ||
          (a->count == best->count && a->face > best->face)) {
        best = a;
      }
    }
    return best ? *best : Action::Pass();
  }

  std::vector<CardUid> DecideExchangeReturn(const PlayerView& view,
                                            std::span<const CardUid>,
                                            int count) override {
    return FallbackReturn(view.hand().cards, count);
  }

  bool DecideSpecialAction(const PlayerView&, SpecialKind offered) override {
    return offered == SpecialKind::kFoodFight;
  }
};

class ConservativeAgent : public AgentPolicy {
 public:
  std::string_view name() const override { return "conservative"; }

  Action DecidePlay(const PlayerView& view) override {
    const auto plays = Plays(view.legal);
    std::vector<const Action*> candidates;
    for (const Action* a : plays) {
      if (a->face != kJokerFace) candidates.push_back(a);
    }
    if (candidates.empty()) {
      // Jokers go down only when nothing else can and passing is not allowed.
      if (plays.empty() || PassIsLegal(view.legal)) return Action::Pass();
      candidates = plays;
    }
    const Action* best = nullptr;
    for (const Action* a : candidates) {
      if (best == nullptr || a->count < best->count ||
          (a->count == best->count && a->face > best->face)) {
        best = a;
      }
    }
    return *best;
  }

  std::vector<CardUid> DecideExchangeReturn(const PlayerView& view,
                                            std::span<const CardUid>,
                                            int count) override {
    return FallbackReturn(view.hand().cards, count);
  }

  bool DecideSpecialAction(const PlayerView&, SpecialKind) override {
    return true;
  }
};

}  // namespace

std::unique_ptr<AgentPolicy> MakeRandomAgent(uint64_t seed) {
  return std::make_unique<RandomAgent>(seed);
}

std::unique_ptr<AgentPolicy> MakeGreedyAgent(uint64_t) {
  return std::make_unique<GreedyAgent>();
}

std::unique_ptr<AgentPolicy> MakeConservativeAgent(uint64_t) {
  return std::make_unique<ConservativeAgent>();
}

bool IsKnownAgent(std::string_view name) {
  return name == "random" || name == "greedy" || name == "conservative";
}

std::unique_ptr<AgentPolicy> MakeAgent(std::string_view name, uint64_t seed) {
  if (name == "random") return MakeRandomAgent(seed);
  if (name == "greedy") return MakeGreedyAgent(seed);
  if (name == "conservative") return MakeConservativeAgent(seed);
  throw Error(ErrorCode::kInvalidConfig,
              "unknown agent \"" + std::string(name) + "\"");
}

Action FallbackPlay(const std::vector<Action>& legal) {
  if (PassIsLegal(legal)) return Action::Pass();
  for (const Action& a : legal) {
    if (a.is_play()) return a;
  }
  return Action::Pass();
}

std::vector<CardUid> FallbackReturn(const CardSet& hand, int count) {
  return ForcedGive(hand, count, /*highest=*/true);
}

}  // namespace chefshat
