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

#ifndef CHEFSHAT_RNG_HPP_
#define CHEFSHAT_RNG_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <utility>

namespace chefshat {

// SplitMix64 finalizer (Steele, Lea & Flood 2014). Used for seeding and for
// deriving independent child seeds.
constexpr uint64_t SplitMix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Child seed number `index` of `base`:
//   DeriveSeed(b, i) = mix(b + (i + 1) * 0x9E3779B97F4A7C15)
// where mix is the SplitMix64 output function.
constexpr uint64_t DeriveSeed(uint64_t base, uint64_t index) {
  uint64_t state = base + index * 0x9E3779B97F4A7C15ULL;
  return SplitMix64(state);
}

// xoshiro256** 1.0 (Blackman & Vigna). Portable and fully specified, so a
// seed yields the same stream on every platform and compiler.
class Xoshiro256 {
 public:
  using State = std::array<uint64_t, 4>;

  explicit constexpr Xoshiro256(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& word : s_) word = SplitMix64(sm);
  }
  explicit constexpr Xoshiro256(const State& state) : s_(state) {}

  constexpr uint64_t Next() {
    const uint64_t result = Rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = Rotl(s_[3], 45);
    return result;
  }

  // Unbiased integer in [0, bound) by rejection of the short tail.
  constexpr uint64_t Below(uint64_t bound) {
    const uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const uint64_t r = Next();
      if (r >= threshold) return r % bound;
    }
  }

  constexpr const State& state() const { return s_; }

 private:
  static constexpr uint64_t Rotl(uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  State s_{};
};

// Fisher-Yates, walking from the back.
template <typename T>
constexpr void Shuffle(std::span<T> items, Xoshiro256& rng) {
  for (size_t i = items.size(); i > 1; --i) {
    const size_t j = static_cast<size_t>(rng.Below(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace chefshat

#endif  // CHEFSHAT_RNG_HPP_
