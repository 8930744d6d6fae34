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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rwelect/config.hpp"
#include "rwelect/message.hpp"
#include "rwelect/types.hpp"

namespace rwelect {

struct Vote {
  NodeId node = 0;
  DrawValue value = DrawValue::from_micros(DrawValue::kMinMicros);

  bool operator==(const Vote&) const = default;
};

/// Complete protocol state of one node. Plain data; every transition is
/// produced by ElectionProtocol and never mutated in place.
struct NodeState {
  NodeId id = 0;
  NodeMode mode = NodeMode::Basic;
  RoundNumber round = 0;

  /// Consecutive draws strictly above the threshold, 0..streak_len.
  std::uint32_t streak = 0;
  /// Largest value drawn this round.
  std::optional<DrawValue> greatest_value;
  std::optional<Vote> voted_for;
  bool drawing_enabled = true;

  /// Values collected while Candidate/Coordinator; includes our own entry.
  /// These are the wheel entries.
  std::map<NodeId, DrawValue> received_values;
  std::set<NodeId> positive_votes;
  std::set<NodeId> responded;

  /// Leader this node follows (or is) in the current round.
  std::optional<NodeId> leader;
  /// Winner the coordinator announced and is waiting to hear from.
  std::optional<NodeId> announced;

  std::optional<Millis> vote_deadline;
  std::optional<Millis> leader_ack_deadline;
  std::optional<Millis> leader_heartbeat_deadline;
  std::optional<Millis> heartbeat_due;

  std::set<NodeId> known_up;

  bool operator==(const NodeState&) const = default;
};

/// Result of one transition: the successor state and the messages to send.
/// `dropped` marks an input that was discarded (stale round, malformed,
/// wrong addressee); `note` says why, or which deadline fired.
struct Step {
  NodeState state;
  std::vector<Message> out;
  bool dropped = false;
  std::string note;

  bool operator==(const Step&) const = default;
};

/// One node's protocol behavior as pure functions of (state, input, time).
///
/// The protocol owns no clock, network or randomness. Draw values, the
/// current time and an entropy word for wheel spins are passed in. All
/// member functions are const and give identical results for identical
/// arguments.
class ElectionProtocol {
 public:
  /// Throws ConfigError when the configuration is invalid.
  explicit ElectionProtocol(ElectionConfig config);

  const ElectionConfig& config() const noexcept { return config_; }
  std::size_t majority() const noexcept { return config_.majority(); }

  /// Fresh Basic node at round 0 with drawing enabled and every member
  /// believed up. Throws ConfigError if `id` is not a member.
  NodeState init_node(NodeId id) const;

  /// Feeds one random draw. Completing the streak turns the node into a
  /// Candidate that votes for itself and proposes its greatest value to
  /// every peer. Throws ContractViolation unless the node is Basic with
  /// drawing enabled.
  Step on_draw(const NodeState& state, DrawValue draw, Millis now) const;

  Step handle_proposal(const NodeState& state, const Message& msg, Millis now,
                       Entropy entropy) const;
  Step handle_vote_response(const NodeState& state, const Message& msg, Millis now,
                            Entropy entropy) const;
  Step handle_announcement(const NodeState& state, const Message& msg, Millis now) const;
  Step handle_heartbeat(const NodeState& state, const Message& msg, Millis now) const;

  /// Routes to the handler for msg.kind. Messages to a Down node, or not
  /// addressed to this node, are dropped.
  Step handle_message(const NodeState& state, const Message& msg, Millis now,
                      Entropy entropy) const;

  /// Acts on every deadline that is <= now.
  Step on_timeout(const NodeState& state, Millis now, Entropy entropy) const;

  NodeState crash(const NodeState& state) const;

  /// Back from Down. The round and the vote cast in it survive the crash;
  /// everything else is cleared and the node waits one leader-silence
  /// period for a heartbeat before it starts a new round.
  NodeState recover(const NodeState& state, Millis now, std::set<NodeId> known_up) const;

  /// Failure-detector input: `peer` is now believed up (or down).
  NodeState peer_status(const NodeState& state, NodeId peer, bool up) const;

  bool has_quorum(const NodeState& state) const noexcept {
    return state.known_up.size() >= majority();
  }

  static std::optional<Millis> next_deadline(const NodeState& state);

 private:
  NodeState enter_round(const NodeState& state, RoundNumber round) const;
  void announce(Step& step, Millis now, Entropy entropy) const;
  void try_promote(Step& step, Millis now, Entropy entropy, bool deadline_passed) const;
  void follow(NodeState& state, NodeId leader, Millis now) const;
  std::vector<NodeId> peers(NodeId self) const;

  ElectionConfig config_;
};

}  // namespace rwelect
