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

#include <cstddef>
#include <vector>

#include "rwelect/types.hpp"

namespace rwelect {

struct ElectionConfig {
  std::vector<NodeId> membership;
  DrawValue threshold = DrawValue::from_micros(850'000);
  std::uint32_t streak_len = 3;
  Millis draw_period_ms = 1;
  Millis vote_timeout_ms = 50;
  Millis leader_ack_timeout_ms = 20;
  Millis heartbeat_interval_ms = 25;
  std::uint32_t leader_miss_limit = 3;
  /// Promote on the first majority instead of waiting for every response;
  /// voters then grant at most one vote per round.
  bool optimized = false;

  /// Default parameters over membership {0, .., nodes - 1}.
  static ElectionConfig with_nodes(std::size_t nodes);

  std::size_t size() const noexcept { return membership.size(); }
  std::size_t majority() const noexcept { return membership.size() / 2 + 1; }
  bool contains(NodeId id) const;

  /// Silence after which a follower treats the leader as failed.
  Millis leader_silence_ms() const noexcept {
    return heartbeat_interval_ms * static_cast<Millis>(leader_miss_limit);
  }

  /// Throws ConfigError on v < 3, duplicate or out-of-range ids,
  /// non-positive durations or a zero streak length.
  void validate() const;

  bool operator==(const ElectionConfig&) const = default;
};

}  // namespace rwelect
