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


// Trace invariant checks shared by the simulator tests and the acceptance
// runner. Each returns a description of the first violation, or nothing.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "rwelect/sim.hpp"

namespace rwelect::checks {

using Violation = std::optional<std::string>;

inline std::string where(const TraceRecord& r) {
  return "seq " + std::to_string(r.seq) + " at " + std::to_string(r.at) + "ms node " +
         node_label(r.node);
}

/// Nodes that entered `mode`, grouped by round.
inline std::map<RoundNumber, std::set<NodeId>> entered(const Trace& t, NodeMode mode) {
  std::map<RoundNumber, std::set<NodeId>> out;
  for (const auto& r : t.records) {
    if (r.event == TraceEvent::StateChange && r.to_mode == mode) out[r.round].insert(r.node);
  }
  return out;
}

inline Violation unique_per_round(const Trace& t, NodeMode mode) {
  for (const auto& [round, nodes] : entered(t, mode)) {
    if (nodes.size() > 1) {
      return std::to_string(nodes.size()) + " nodes became " + std::string(to_string(mode)) +
             " in round " + std::to_string(round);
    }
  }
  return std::nullopt;
}

inline Violation ordering(const Trace& t) {
  for (std::size_t i = 1; i < t.records.size(); ++i) {
    const auto& a = t.records[i - 1];
    const auto& b = t.records[i];
    if (b.seq != a.seq + 1) return "seq gap before " + where(b);
    if (b.at < a.at) return "time goes backwards at " + where(b);
  }
  // Every delivery matches an earlier send at least one millisecond before.
  std::vector<std::pair<Message, Millis>> in_flight;
  for (const auto& r : t.records) {
    if (r.event == TraceEvent::Send) in_flight.emplace_back(*r.message, r.at);
    if (r.event != TraceEvent::Recv) continue;
    bool found = false;
    for (auto it = in_flight.begin(); it != in_flight.end(); ++it) {
      if (it->first == *r.message && it->second + 1 <= r.at) {
        in_flight.erase(it);
        found = true;
        break;
      }
    }
    if (!found) return "delivery without a prior send at " + where(r);
  }
  return std::nullopt;
}

inline Violation crash_stop(const Trace& t) {
  std::set<NodeId> down;
  for (const auto& r : t.records) {
    if (r.event == TraceEvent::Crash) {
      down.insert(r.node);
    } else if (r.event == TraceEvent::Recover) {
      down.erase(r.node);
    } else if (down.contains(r.node)) {
      return std::string(to_string(r.event)) + " from a down node at " + where(r);
    }
  }
  return std::nullopt;
}

inline Violation round_hygiene(const Trace& t) {
  std::map<NodeId, RoundNumber> round;
  for (const auto& r : t.records) {
    if (r.event == TraceEvent::Elected) continue;
    auto [it, fresh] = round.try_emplace(r.node, r.round);
    if (!fresh && r.round < it->second) return "round decreased at " + where(r);
    it->second = r.round;
    if (r.event == TraceEvent::Send && r.message->round < r.round) {
      return "message below sender round at " + where(r);
    }
  }
  return std::nullopt;
}

// Values a node granted PositiveVotes to must strictly increase per round.
inline Violation vote_monotonicity(const Trace& t) {
  std::map<NodeId, DrawValue> last_proposal;
  std::map<std::pair<NodeId, RoundNumber>, DrawValue> granted;
  for (const auto& r : t.records) {
    if (r.event == TraceEvent::Recv && r.message->kind == MessageKind::Proposal) {
      last_proposal.insert_or_assign(r.node, *r.message->value);
    }
    if (r.event == TraceEvent::Send && r.message->kind == MessageKind::PositiveVote) {
      const DrawValue v = last_proposal.at(r.node);
      auto key = std::make_pair(r.node, r.message->round);
      if (auto it = granted.find(key); it != granted.end() && !(it->second < v)) {
        return "non-increasing grant at " + where(r);
      }
      granted.insert_or_assign(key, v);
    }
  }
  return std::nullopt;
}

// A Proposal is only sent by a node that has just become Candidate.
inline Violation self_contained_candidates(const Trace& t) {
  std::map<NodeId, NodeMode> mode;
  for (const auto& r : t.records) {
    if (r.event == TraceEvent::StateChange || r.event == TraceEvent::Crash ||
        r.event == TraceEvent::Recover) {
      mode[r.node] = *r.to_mode;
    }
    if (r.event == TraceEvent::Send && r.message->kind == MessageKind::Proposal &&
        mode[r.node] != NodeMode::Candidate) {
      return "proposal from a non-candidate at " + where(r);
    }
  }
  return std::nullopt;
}

// Recomputes each node's streak from the draw log and checks that
// candidacy starts exactly when it completes.
inline Violation streaks(const Trace& t) {
  const auto& cfg = t.setup.config;
  std::map<NodeId, std::uint32_t> run;
  std::map<NodeId, RoundNumber> round;
  std::optional<NodeId> expect_candidate;
  for (std::size_t i = 0; i < t.records.size(); ++i) {
    const auto& r = t.records[i];
    if (expect_candidate) {
      if (!(r.event == TraceEvent::StateChange && r.node == *expect_candidate &&
            r.to_mode == NodeMode::Candidate)) {
        return "streak completed without candidacy before " + where(r);
      }
      expect_candidate.reset();
      run[r.node] = 0;
      continue;
    }
    if (auto it = round.find(r.node); it != round.end() && it->second != r.round) {
      run[r.node] = 0;
    }
    if (r.event != TraceEvent::Elected) round[r.node] = r.round;

    if (r.event == TraceEvent::Draw) {
      if (!r.note.empty()) {
        run[r.node] = 0;
        continue;
      }
      run[r.node] = *r.draw > cfg.threshold ? run[r.node] + 1 : 0;
      if (run[r.node] == cfg.streak_len) expect_candidate = r.node;
      continue;
    }
    const bool resets =
        r.event == TraceEvent::StateChange || r.event == TraceEvent::Crash ||
        r.event == TraceEvent::Recover ||
        (r.event == TraceEvent::Send && r.message->kind == MessageKind::PositiveVote) ||
        (r.event == TraceEvent::Recv && r.message->kind == MessageKind::Heartbeat &&
         r.note.rfind("dropped", 0) != 0);
    if (r.event == TraceEvent::StateChange && r.to_mode == NodeMode::Candidate) {
      return "candidacy without a completed streak at " + where(r);
    }
    if (resets) run[r.node] = 0;
  }
  if (expect_candidate) return std::string("trace ends after a completed streak");
  return std::nullopt;
}

/// Distinct Candidates in the round of the final Elected record.
inline std::optional<std::size_t> candidates_in_winning_round(const Trace& t) {
  std::optional<RoundNumber> winning;
  for (const auto& r : t.records) {
    if (r.event == TraceEvent::Elected) winning = r.round;
  }
  if (!winning) return std::nullopt;
  const auto by_round = entered(t, NodeMode::Candidate);
  auto it = by_round.find(*winning);
  return it == by_round.end() ? 0 : it->second.size();
}

inline std::size_t non_heartbeat_sends(const Trace& t) {
  std::size_t n = 0;
  for (const auto& r : t.records) {
    n += r.event == TraceEvent::Send && r.message->kind != MessageKind::Heartbeat;
  }
  return n;
}

/// All invariants; the first violation found, if any.
inline Violation all(const Trace& t) {
  for (const auto& check :
       {ordering(t), crash_stop(t), round_hygiene(t), unique_per_round(t, NodeMode::Leader),
        self_contained_candidates(t), streaks(t)}) {
    if (check) return check;
  }
  if (t.setup.config.optimized) {
    if (auto v = unique_per_round(t, NodeMode::Coordinator)) return v;
  } else if (auto v = vote_monotonicity(t)) {
    return v;
  }
  return std::nullopt;
}

}  // namespace rwelect::checks
