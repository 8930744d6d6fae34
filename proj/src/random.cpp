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

#include "rwelect/random.hpp"

namespace rwelect {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(seed ^ splitmix64(stream + 0x9E3779B97F4A7C15ULL));
}

std::uint64_t scale_word(std::uint64_t word, std::uint64_t n) noexcept {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(word) * n) >> 64);
}

DrawValue draw_from_word(std::uint64_t word) noexcept {
  const auto offset = scale_word(word, DrawValue::kMaxMicros);
  return DrawValue::from_micros(static_cast<std::uint32_t>(offset) + DrawValue::kMinMicros);
}

DrawValue next_draw(SeededRng& rng) { return draw_from_word(rng.next_u64()); }

Wheel::Wheel(std::vector<Entry> entries) {
  entries_.reserve(entries.size());
  for (const auto& e : entries) add(e.node, e.value);
}

void Wheel::add(NodeId node, DrawValue value) {
  entries_.push_back({node, value});
  total_ += value.micros();
}

NodeId Wheel::select(std::uint64_t target) const {
  if (entries_.empty()) throw EmptyWheel();
  if (target >= total_) throw std::out_of_range("wheel target beyond total");
  std::uint64_t cumulative = 0;
  for (const auto& e : entries_) {
    cumulative += e.value.micros();
    if (cumulative > target) return e.node;
  }
  return entries_.back().node;  // unreachable: target < total
}

NodeId Wheel::spin(std::uint64_t word) const {
  if (entries_.empty()) throw EmptyWheel();
  return select(scale_word(word, total_));
}

NodeId spin(const Wheel& wheel, SeededRng& rng) {
  if (wheel.empty()) throw EmptyWheel();
  return wheel.spin(rng.next_u64());
}

}  // namespace rwelect
