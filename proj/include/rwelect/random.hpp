// Copyright 2026 The rwelect Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rwelect/types.hpp"

namespace rwelect {

/// SplitMix64 output function. Used for all seed derivation.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Derives the seed of sub-stream `stream` from `seed`:
///   mix_seed(s, k) = splitmix64(s ^ splitmix64(k + 0x9E3779B97F4A7C15)).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Seeded 64-bit generator (std::mt19937_64, whose output sequence is fixed
/// by the C++ standard). Copying duplicates the stream.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  bool operator==(const SeededRng&) const = default;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// floor(word * n / 2^64): maps a uniform 64-bit word onto [0, n).
std::uint64_t scale_word(std::uint64_t word, std::uint64_t n) noexcept;

/// Uniform over the 999999 representable values in (0, 1).
DrawValue draw_from_word(std::uint64_t word) noexcept;

/// Advances `rng` by one word and returns the draw.
DrawValue next_draw(SeededRng& rng);

class EmptyWheel : public std::runtime_error {
 public:
  EmptyWheel() : std::runtime_error("roulette wheel has no entries") {}
};

/// Fitness-proportional selection over (node, value) entries. Totals are
/// exact integer sums of micro-units.
class Wheel {
 public:
  struct Entry {
    NodeId node;
    DrawValue value;
  };

  Wheel() = default;
  explicit Wheel(std::vector<Entry> entries);

  void add(NodeId node, DrawValue value);

  std::span<const Entry> entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::uint64_t total_micros() const noexcept { return total_; }

  /// Entry whose cumulative segment contains `target` (0 <= target < total):
  /// the first index whose running sum exceeds `target`.
  NodeId select(std::uint64_t target) const;

  /// One spin from a uniform word: target = scale_word(word, total).
  NodeId spin(std::uint64_t word) const;

 private:
  std::vector<Entry> entries_;
  std::uint64_t total_ = 0;
};

/// Spins using one word from `rng`. Throws EmptyWheel on an empty wheel.
NodeId spin(const Wheel& wheel, SeededRng& rng);

}  // namespace rwelect
