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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rwelect/config.hpp"
#include "rwelect/message.hpp"
#include "rwelect/types.hpp"

namespace rwelect {

/// Scripted latency does not cover a sent message.
class ScriptError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One scripted delay. Unset match fields are wildcards. A non-repeating
/// entry is consumed by the first send it matches; entries are tried in
/// order.
struct ScriptedDelay {
  std::optional<MessageKind> kind;
  std::optional<NodeId> from;
  std::optional<NodeId> to;
  Millis delay = 1;
  bool repeat = false;

  bool operator==(const ScriptedDelay&) const = default;
};

struct LatencyModel {
  enum class Kind : std::uint8_t { Fixed, UniformRange, Scripted };

  Kind kind = Kind::UniformRange;
  Millis lo = 1;
  Millis hi = 5;
  std::vector<ScriptedDelay> script;

  static LatencyModel fixed(Millis delay);
  static LatencyModel uniform(Millis lo, Millis hi);
  static LatencyModel scripted(std::vector<ScriptedDelay> script);

  /// Largest delay the model can produce.
  Millis max_delay() const;

  /// Throws ConfigError on delays < 1 ms or lo > hi.
  void validate() const;

  bool operator==(const LatencyModel&) const = default;
};

enum class FaultAction : std::uint8_t { Crash, Recover };

struct Fault {
  Millis at = 0;
  FaultAction action = FaultAction::Crash;
  NodeId node = 0;

  bool operator==(const Fault&) const = default;
};

/// A run stops once one leader's heartbeat is known to a majority and that
/// stays true for `stable_heartbeats` further heartbeat intervals with no
/// node in a later round, or when `max_time_ms` is reached.
struct StopRule {
  Millis max_time_ms = 30'000;
  std::uint32_t stable_heartbeats = 2;

  bool operator==(const StopRule&) const = default;
};

/// Everything a run is a pure function of.
struct SimSetup {
  ElectionConfig config = ElectionConfig::with_nodes(5);
  std::uint64_t seed = 0;
  LatencyModel latency;
  std::vector<Fault> faults;
  StopRule stop;
  /// Per-node forced draw values, used before the node's random stream.
  std::map<NodeId, std::vector<DrawValue>> draw_script;

  void validate() const;

  bool operator==(const SimSetup&) const = default;
};

/// Discrete event; executed in (at, seq) order.
struct SimEvent {
  enum class Kind : std::uint8_t { Deliver, DrawTick, TimerCheck, Crash, Recover };

  Millis at = 0;
  std::uint64_t seq = 0;
  Kind kind = Kind::DrawTick;
  NodeId node = 0;
  std::optional<Message> message;
};

struct RunStats {
  bool elected = false;
  /// Virtual time at which the final leader's heartbeat had reached a
  /// majority (leader included).
  Millis election_ms = 0;
  std::optional<NodeId> leader;
  RoundNumber leader_round = 0;
  /// Distinct nodes that entered Candidate in the winning round.
  std::uint32_t candidates_seen = 0;
  /// Distinct nodes that entered Candidate at any point of the run.
  std::uint32_t candidates_total = 0;
  std::uint64_t rounds_used = 0;
  std::array<std::uint64_t, kMessageKindCount> messages_by_kind{};
  bool blocked = false;
  bool liveness_failure = false;
  /// Two distinct nodes became Leader in the same round.
  bool safety_violation = false;
  Millis end_ms = 0;

  std::uint64_t messages(MessageKind kind) const {
    return messages_by_kind[static_cast<std::size_t>(kind)];
  }
  std::uint64_t non_heartbeat_messages() const;
};

}  // namespace rwelect
