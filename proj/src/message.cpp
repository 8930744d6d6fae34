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

#include "rwelect/message.hpp"

namespace rwelect {

std::string_view to_string(MessageKind kind) {
  switch (kind) {
    case MessageKind::Proposal: return "Proposal";
    case MessageKind::PositiveVote: return "PositiveVote";
    case MessageKind::NegativeVote: return "NegativeVote";
    case MessageKind::Announcement: return "Announcement";
    case MessageKind::Heartbeat: return "Heartbeat";
  }
  return "?";
}

MessageKind parse_message_kind(std::string_view text) {
  for (auto kind : {MessageKind::Proposal, MessageKind::PositiveVote,
                    MessageKind::NegativeVote, MessageKind::Announcement,
                    MessageKind::Heartbeat}) {
    if (to_string(kind) == text) return kind;
  }
  throw ConfigError("unknown message kind '" + std::string(text) + "'");
}

Message Message::proposal(NodeId from, NodeId to, RoundNumber round, DrawValue value) {
  return Message{MessageKind::Proposal, from, to, round, value, false, std::nullopt};
}

Message Message::vote(bool positive, NodeId from, NodeId to, RoundNumber round,
                      DrawValue value, bool already_coordinator) {
  return Message{positive ? MessageKind::PositiveVote : MessageKind::NegativeVote,
                 from,
                 to,
                 round,
                 value,
                 !positive && already_coordinator,
                 std::nullopt};
}

Message Message::announcement(NodeId from, NodeId to, RoundNumber round, NodeId leader) {
  return Message{MessageKind::Announcement, from, to, round, std::nullopt, false, leader};
}

Message Message::heartbeat(NodeId from, NodeId to, RoundNumber round, NodeId leader) {
  return Message{MessageKind::Heartbeat, from, to, round, std::nullopt, false, leader};
}

bool well_formed(const Message& msg) {
  switch (msg.kind) {
    case MessageKind::Proposal:
    case MessageKind::PositiveVote:
    case MessageKind::NegativeVote:
      return msg.value.has_value();
    case MessageKind::Announcement:
    case MessageKind::Heartbeat:
      return msg.leader.has_value();
  }
  return false;
}

std::string describe(const Message& msg) {
  std::string s(to_string(msg.kind));
  s += ' ';
  s += node_label(msg.from);
  s += "->";
  s += node_label(msg.to);
  s += " r" + std::to_string(msg.round);
  if (msg.value) s += " v=" + msg.value->to_string();
  if (msg.already_coordinator) s += " already_coordinator";
  if (msg.leader) s += " leader=" + node_label(*msg.leader);
  return s;
}

}  // namespace rwelect
