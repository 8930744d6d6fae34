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

#include <optional>
#include <string>
#include <string_view>

#include "rwelect/types.hpp"

namespace rwelect {

enum class MessageKind : std::uint8_t {
  Proposal,
  PositiveVote,
  NegativeVote,
  Announcement,
  Heartbeat,
};

inline constexpr std::size_t kMessageKindCount = 5;

std::string_view to_string(MessageKind kind);
MessageKind parse_message_kind(std::string_view text);

/// Wire message exchanged between nodes.
///
/// Proposals and both vote kinds carry the sender's greatest draw of the
/// round in `value`. Announcements and heartbeats carry `leader`.
/// `already_coordinator` is only meaningful on a NegativeVote.
struct Message {
  MessageKind kind = MessageKind::Proposal;
  NodeId from = 0;
  NodeId to = 0;
  RoundNumber round = 0;
  std::optional<DrawValue> value;
  bool already_coordinator = false;
  std::optional<NodeId> leader;

  static Message proposal(NodeId from, NodeId to, RoundNumber round, DrawValue value);
  static Message vote(bool positive, NodeId from, NodeId to, RoundNumber round,
                      DrawValue value, bool already_coordinator = false);
  static Message announcement(NodeId from, NodeId to, RoundNumber round, NodeId leader);
  static Message heartbeat(NodeId from, NodeId to, RoundNumber round, NodeId leader);

  bool operator==(const Message&) const = default;
};

/// True when the fields required by `kind` are present.
bool well_formed(const Message& msg);

inline bool is_vote(MessageKind kind) {
  return kind == MessageKind::PositiveVote || kind == MessageKind::NegativeVote;
}

/// One-line human rendering, e.g. "Proposal A->C r0 v=0.930000".
std::string describe(const Message& msg);

}  // namespace rwelect
