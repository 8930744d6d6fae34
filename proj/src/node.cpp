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

#include "rwelect/node.hpp"

#include <algorithm>
#include <utility>

#include "rwelect/random.hpp"

namespace rwelect {
namespace {

void clear_candidacy(NodeState& s) {
  s.positive_votes.clear();
  s.received_values.clear();
  s.responded.clear();
  s.announced.reset();
  s.vote_deadline.reset();
  s.leader_ack_deadline.reset();
}

// A node that has no draw yet this round answers with a fresh one so that
// it still owns a slice of the wheel.
DrawValue own_value(NodeState& s, Entropy entropy) {
  if (!s.greatest_value) s.greatest_value = draw_from_word(entropy);
  return *s.greatest_value;
}

Step unchanged(const NodeState& state) { return Step{state, {}, false, {}}; }

Step drop(const NodeState& state, std::string reason) {
  return Step{state, {}, true, std::move(reason)};
}

}  // namespace

ElectionProtocol::ElectionProtocol(ElectionConfig config) : config_(std::move(config)) {
  config_.validate();
}

std::vector<NodeId> ElectionProtocol::peers(NodeId self) const {
  std::vector<NodeId> out;
  out.reserve(config_.size());
  for (NodeId id : config_.membership) {
    if (id != self) out.push_back(id);
  }
  return out;
}

NodeState ElectionProtocol::init_node(NodeId id) const {
  if (!config_.contains(id)) {
    throw ConfigError("node " + std::to_string(id) + " is not a cluster member");
  }
  NodeState s;
  s.id = id;
  s.known_up.insert(config_.membership.begin(), config_.membership.end());
  return s;
}

NodeState ElectionProtocol::enter_round(const NodeState& state, RoundNumber round) const {
  NodeState s;
  s.id = state.id;
  s.round = round;
  s.known_up = state.known_up;
  return s;
}

void ElectionProtocol::follow(NodeState& s, NodeId leader, Millis now) const {
  clear_candidacy(s);
  s.mode = NodeMode::Basic;
  s.leader = leader;
  s.drawing_enabled = false;
  s.streak = 0;
  s.heartbeat_due.reset();
  s.leader_heartbeat_deadline = now + config_.leader_silence_ms();
}

Step ElectionProtocol::on_draw(const NodeState& state, DrawValue draw, Millis now) const {
  if (state.mode != NodeMode::Basic || !state.drawing_enabled) {
    throw ContractViolation("on_draw requires a Basic node with drawing enabled");
  }
  if (!has_quorum(state)) {
    Step step = drop(state, "blocked: no majority up");
    step.state.streak = 0;
    return step;
  }
  Step step = unchanged(state);
  auto& s = step.state;
  s.greatest_value = s.greatest_value ? std::max(*s.greatest_value, draw) : draw;
  s.streak = draw > config_.threshold ? s.streak + 1 : 0;
  if (s.streak < config_.streak_len) return step;

  const DrawValue value = *s.greatest_value;
  s.mode = NodeMode::Candidate;
  s.voted_for = Vote{s.id, value};
  clear_candidacy(s);
  s.positive_votes.insert(s.id);
  s.received_values.emplace(s.id, value);
  s.drawing_enabled = false;
  s.leader_heartbeat_deadline.reset();
  s.vote_deadline = now + config_.vote_timeout_ms;
  for (NodeId peer : peers(s.id)) {
    step.out.push_back(Message::proposal(s.id, peer, s.round, value));
  }
  return step;
}

Step ElectionProtocol::handle_proposal(const NodeState& state, const Message& msg, Millis now,
                                       Entropy entropy) const {
  if (msg.kind != MessageKind::Proposal) {
    throw ContractViolation("handle_proposal called with " + std::string(to_string(msg.kind)));
  }
  if (!well_formed(msg)) return drop(state, "malformed: proposal without value");
  if (state.mode == NodeMode::Down) return drop(state, "node is down");

  Step step = unchanged(state);
  auto& s = step.state;
  if (msg.round < s.round) {
    // Answer in our own round so the sender catches up.
    step.out.push_back(Message::vote(false, s.id, msg.from, s.round, own_value(s, entropy)));
    step.note = "stale round";
    return step;
  }
  if (msg.round > s.round) s = enter_round(s, msg.round);

  const bool decided =
      s.mode == NodeMode::Coordinator || s.mode == NodeMode::Leader || s.leader.has_value();
  bool grant = false;
  if (!decided) {
    if (config_.optimized) {
      grant = !s.voted_for.has_value();
    } else {
      // A candidate's vote is its own value, so the same rule covers it.
      grant = !s.voted_for || s.voted_for->value < *msg.value;
    }
  }

  const DrawValue value = own_value(s, entropy);
  if (!grant) {
    step.out.push_back(Message::vote(false, s.id, msg.from, s.round, value, decided));
    return step;
  }
  if (s.mode == NodeMode::Candidate) {
    clear_candidacy(s);
    s.mode = NodeMode::Basic;
  }
  s.voted_for = Vote{msg.from, *msg.value};
  s.drawing_enabled = false;
  s.streak = 0;
  s.leader_heartbeat_deadline = now + config_.leader_silence_ms();
  step.out.push_back(Message::vote(true, s.id, msg.from, s.round, value));
  return step;
}

void ElectionProtocol::announce(Step& step, Millis now, Entropy entropy) const {
  auto& s = step.state;
  Wheel wheel;
  for (const auto& [node, value] : s.received_values) wheel.add(node, value);
  const NodeId winner = wheel.spin(entropy);
  s.announced = winner;
  s.leader_ack_deadline = now + config_.leader_ack_timeout_ms;
  step.out.push_back(Message::announcement(s.id, winner, s.round, winner));
}

void ElectionProtocol::try_promote(Step& step, Millis now, Entropy entropy,
                                   bool deadline_passed) const {
  auto& s = step.state;
  if (s.positive_votes.size() < majority()) return;
  if (!config_.optimized && !deadline_passed) {
    const bool all_in = std::all_of(s.known_up.begin(), s.known_up.end(), [&](NodeId p) {
      return p == s.id || s.responded.contains(p);
    });
    if (!all_in) return;
  }
  s.mode = NodeMode::Coordinator;
  s.vote_deadline.reset();
  announce(step, now, entropy);
}

Step ElectionProtocol::handle_vote_response(const NodeState& state, const Message& msg,
                                            Millis now, Entropy entropy) const {
  if (!is_vote(msg.kind)) {
    throw ContractViolation("handle_vote_response called with " +
                            std::string(to_string(msg.kind)));
  }
  if (!well_formed(msg)) return drop(state, "malformed: vote without value");
  if (state.mode == NodeMode::Down) return drop(state, "node is down");
  if (msg.round < state.round) return drop(state, "stale round");

  Step step = unchanged(state);
  auto& s = step.state;
  if (msg.round > s.round) {
    s = enter_round(s, msg.round);
    step.note = "caught up to newer round";
    return step;
  }

  if (s.mode == NodeMode::Coordinator) {
    s.received_values.try_emplace(msg.from, *msg.value);
    step.note = "late response";
    return step;
  }
  if (s.mode != NodeMode::Candidate) return drop(state, "not a candidate");

  s.responded.insert(msg.from);
  s.received_values.insert_or_assign(msg.from, *msg.value);
  if (msg.kind == MessageKind::PositiveVote) {
    s.positive_votes.insert(msg.from);
  } else if (msg.already_coordinator || *msg.value > *s.greatest_value) {
    clear_candidacy(s);
    s.mode = NodeMode::Basic;
    s.streak = 0;
    if (msg.already_coordinator) {
      // The round is settled elsewhere; wait for its leader.
      s.drawing_enabled = false;
      s.leader_heartbeat_deadline = now + config_.leader_silence_ms();
      step.note = "invalidated: responder already coordinator";
    } else {
      s.drawing_enabled = true;
      step.note = "invalidated: greater value";
    }
    return step;
  }
  try_promote(step, now, entropy, false);
  return step;
}

Step ElectionProtocol::handle_announcement(const NodeState& state, const Message& msg,
                                           Millis now) const {
  if (msg.kind != MessageKind::Announcement) {
    throw ContractViolation("handle_announcement called with " +
                            std::string(to_string(msg.kind)));
  }
  if (!well_formed(msg)) return drop(state, "malformed: announcement without leader");
  if (state.mode == NodeMode::Down) return drop(state, "node is down");
  if (*msg.leader != state.id || msg.to != state.id) {
    return drop(state, "announcement names another node");
  }
  if (msg.round < state.round) return drop(state, "stale round");

  Step step = unchanged(state);
  auto& s = step.state;
  if (msg.round > s.round) s = enter_round(s, msg.round);
  if (s.mode == NodeMode::Leader) return drop(state, "already leader");
  if (s.leader && *s.leader != s.id) return drop(state, "round already has a leader");

  clear_candidacy(s);
  s.mode = NodeMode::Leader;
  s.leader = s.id;
  s.drawing_enabled = false;
  s.streak = 0;
  s.leader_heartbeat_deadline.reset();
  s.heartbeat_due = now + config_.heartbeat_interval_ms;
  for (NodeId peer : peers(s.id)) {
    step.out.push_back(Message::heartbeat(s.id, peer, s.round, s.id));
  }
  return step;
}

Step ElectionProtocol::handle_heartbeat(const NodeState& state, const Message& msg,
                                        Millis now) const {
  if (msg.kind != MessageKind::Heartbeat) {
    throw ContractViolation("handle_heartbeat called with " + std::string(to_string(msg.kind)));
  }
  if (!well_formed(msg)) return drop(state, "malformed: heartbeat without leader");
  if (state.mode == NodeMode::Down) return drop(state, "node is down");
  if (msg.round < state.round) return drop(state, "stale round");

  Step step = unchanged(state);
  auto& s = step.state;
  if (msg.round > s.round) s = enter_round(s, msg.round);
  if (s.mode == NodeMode::Leader || (s.leader && *s.leader != *msg.leader)) {
    return drop(state, "competing leader in the same round");
  }
  follow(s, *msg.leader, now);
  return step;
}

Step ElectionProtocol::handle_message(const NodeState& state, const Message& msg, Millis now,
                                      Entropy entropy) const {
  if (msg.to != state.id) return drop(state, "addressed to another node");
  if (state.mode == NodeMode::Down) return drop(state, "node is down");
  switch (msg.kind) {
    case MessageKind::Proposal: return handle_proposal(state, msg, now, entropy);
    case MessageKind::PositiveVote:
    case MessageKind::NegativeVote: return handle_vote_response(state, msg, now, entropy);
    case MessageKind::Announcement: return handle_announcement(state, msg, now);
    case MessageKind::Heartbeat: return handle_heartbeat(state, msg, now);
  }
  return drop(state, "unknown message kind");
}

Step ElectionProtocol::on_timeout(const NodeState& state, Millis now, Entropy entropy) const {
  Step step = unchanged(state);
  if (state.mode == NodeMode::Down) return step;
  auto& s = step.state;
  const bool blocked = !has_quorum(s);
  const auto due = [now](const std::optional<Millis>& deadline) {
    return deadline && *deadline <= now;
  };
  std::vector<std::string> fired;

  if (s.mode == NodeMode::Leader && due(s.heartbeat_due)) {
    for (NodeId peer : peers(s.id)) {
      step.out.push_back(Message::heartbeat(s.id, peer, s.round, s.id));
    }
    s.heartbeat_due = now + config_.heartbeat_interval_ms;
    fired.emplace_back("heartbeat");
  }

  if (s.mode == NodeMode::Candidate && due(s.vote_deadline)) {
    if (blocked) {
      s.vote_deadline = now + config_.vote_timeout_ms;
      fired.emplace_back("vote deadline (blocked)");
    } else {
      try_promote(step, now, entropy, true);
      if (s.mode == NodeMode::Candidate) s = enter_round(s, s.round + 1);
      fired.emplace_back("vote deadline");
    }
  }

  if (s.mode == NodeMode::Coordinator && due(s.leader_ack_deadline)) {
    fired.emplace_back("leader ack deadline");
    if (s.announced) s.received_values.erase(*s.announced);
    s.announced.reset();
    s.leader_ack_deadline.reset();
    if (!s.received_values.empty()) {
      announce(step, now, entropy);
    } else if (blocked) {
      s.leader_ack_deadline = now + config_.leader_ack_timeout_ms;
    } else {
      s = enter_round(s, s.round + 1);
    }
  }

  if (s.mode == NodeMode::Basic && due(s.leader_heartbeat_deadline)) {
    if (blocked) {
      s.leader_heartbeat_deadline = now + config_.leader_silence_ms();
      fired.emplace_back("leader silence (blocked)");
    } else {
      s = enter_round(s, s.round + 1);
      fired.emplace_back("leader silence");
    }
  }

  for (std::size_t i = 0; i < fired.size(); ++i) {
    if (i) step.note += "; ";
    step.note += fired[i];
  }
  return step;
}

NodeState ElectionProtocol::crash(const NodeState& state) const {
  NodeState s = enter_round(state, state.round);
  s.voted_for = state.voted_for;
  s.mode = NodeMode::Down;
  s.drawing_enabled = false;
  return s;
}

NodeState ElectionProtocol::recover(const NodeState& state, Millis now,
                                    std::set<NodeId> known_up) const {
  NodeState s = enter_round(state, state.round);
  s.voted_for = state.voted_for;
  s.drawing_enabled = false;
  s.known_up = std::move(known_up);
  s.leader_heartbeat_deadline = now + config_.leader_silence_ms();
  return s;
}

NodeState ElectionProtocol::peer_status(const NodeState& state, NodeId peer, bool up) const {
  NodeState s = state;
  if (up) {
    s.known_up.insert(peer);
  } else {
    s.known_up.erase(peer);
  }
  return s;
}

std::optional<Millis> ElectionProtocol::next_deadline(const NodeState& state) {
  std::optional<Millis> best;
  for (const auto& d : {state.vote_deadline, state.leader_ack_deadline,
                        state.leader_heartbeat_deadline, state.heartbeat_due}) {
    if (d && (!best || *d < *best)) best = d;
  }
  return best;
}

}  // namespace rwelect
