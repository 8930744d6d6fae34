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

#include "rwelect/scenarios.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <set>

namespace rwelect {
namespace {

constexpr NodeId A = 0, B = 1, C = 2, D = 3, E = 4;

// Seeds whose wheel spin picks node C, as in both worked examples.
constexpr std::uint64_t kCase1Seed = 0;
constexpr std::uint64_t kCase2Seed = 2;

std::vector<DrawValue> values(std::initializer_list<const char*> texts) {
  std::vector<DrawValue> out;
  for (const char* t : texts) out.push_back(DrawValue::parse(t));
  return out;
}

ScriptedDelay delay(MessageKind kind, NodeId from, NodeId to, Millis ms) {
  return ScriptedDelay{kind, from, to, ms, false};
}

ScriptedDelay every(Millis ms) {
  return ScriptedDelay{std::nullopt, std::nullopt, std::nullopt, ms, true};
}

bool is_send(const TraceRecord& r, MessageKind kind, NodeId from, NodeId to) {
  return r.event == TraceEvent::Send && r.message && r.message->kind == kind &&
         r.message->from == from && r.message->to == to;
}

bool is_change(const TraceRecord& r, NodeId node, std::optional<NodeMode> from, NodeMode to) {
  return r.event == TraceEvent::StateChange && r.node == node && r.to_mode == to &&
         (!from || r.from_mode == from);
}

std::set<NodeId> leaders_at_end(const Trace& trace) {
  std::set<NodeId> leaders;
  for (const auto& r : trace.records) {
    if (r.event != TraceEvent::StateChange) continue;
    if (r.to_mode == NodeMode::Leader) leaders.insert(r.node);
    if (r.from_mode == NodeMode::Leader) leaders.erase(r.node);
  }
  return leaders;
}

void common_checks(const RunResult& result, std::vector<std::string>& failures) {
  if (!result.stats.elected) failures.emplace_back("no leader elected");
  if (result.stats.safety_violation) failures.emplace_back("two leaders in one round");
  if (leaders_at_end(result.trace).size() != 1) {
    failures.emplace_back("expected exactly one leader at the end");
  }
  const auto& records = result.trace.records;
  if (result.stats.leader) {
    const NodeId leader = *result.stats.leader;
    const bool beats = std::any_of(records.begin(), records.end(), [&](const TraceRecord& r) {
      return r.event == TraceEvent::Send && r.message &&
             r.message->kind == MessageKind::Heartbeat && r.message->from == leader;
    });
    if (!beats) failures.emplace_back("leader never sent heartbeats");
  }
}

}  // namespace

SimSetup scenario_case1_setup() {
  SimSetup s;
  s.config = ElectionConfig::with_nodes(5);
  s.seed = kCase1Seed;
  s.draw_script = {
      {A, values({"0.912000", "0.934000", "0.887000"})},
      {B, values({"0.412000", "0.733000", "0.215000", "0.508000", "0.644000", "0.371000"})},
      {C, values({"0.684000", "0.129000", "0.805000", "0.377000", "0.560000", "0.242000"})},
      {D, values({"0.275000", "0.618000", "0.449000", "0.702000", "0.093000", "0.531000"})},
      {E, values({"0.538000", "0.801000", "0.366000", "0.154000", "0.690000", "0.427000"})},
  };
  s.latency = LatencyModel::scripted({every(2)});
  return s;
}

SimSetup scenario_case2_setup() {
  SimSetup s;
  s.config = ElectionConfig::with_nodes(5);
  s.seed = kCase2Seed;
  s.draw_script = {
      {A, values({"0.880000", "0.910000", "0.870000"})},
      {B, values({"0.402000", "0.930000", "0.950000", "0.900000"})},
      {C, values({"0.641000", "0.118000", "0.790000", "0.356000", "0.527000", "0.263000"})},
      {D, values({"0.314000", "0.602000", "0.471000", "0.745000", "0.082000", "0.519000"})},
      {E, values({"0.559000", "0.817000", "0.338000", "0.176000", "0.673000", "0.405000"})},
  };
  // A reaches D and E first, B reaches C and D, then A's proposal reaches C
  // and B's reaches A.
  s.latency = LatencyModel::scripted({
      delay(MessageKind::Proposal, A, B, 13),
      delay(MessageKind::Proposal, A, C, 8),
      delay(MessageKind::Proposal, A, D, 1),
      delay(MessageKind::Proposal, A, E, 1),
      delay(MessageKind::Proposal, B, A, 9),
      delay(MessageKind::Proposal, B, C, 2),
      delay(MessageKind::Proposal, B, D, 2),
      delay(MessageKind::Proposal, B, E, 3),
      delay(MessageKind::NegativeVote, C, A, 4),
      every(1),
  });
  return s;
}

RunResult run_scenario_case1() { return run(scenario_case1_setup()); }
RunResult run_scenario_case2() { return run(scenario_case2_setup()); }

std::vector<std::string> check_scenario_case1(const RunResult& result) {
  std::vector<std::string> failures;
  common_checks(result, failures);
  const auto& records = result.trace.records;

  const auto count = [&](auto pred) {
    return std::count_if(records.begin(), records.end(), pred);
  };
  if (count([](const TraceRecord& r) { return is_change(r, A, NodeMode::Basic, NodeMode::Candidate); }) != 1) {
    failures.emplace_back("A did not become Candidate exactly once");
  }
  if (count([](const TraceRecord& r) { return is_change(r, A, NodeMode::Candidate, NodeMode::Coordinator); }) != 1) {
    failures.emplace_back("A did not become Coordinator");
  }
  if (count([](const TraceRecord& r) {
        return r.event == TraceEvent::StateChange && r.node != A &&
               r.to_mode == NodeMode::Candidate;
      }) != 0) {
    failures.emplace_back("a node other than A became Candidate");
  }
  for (NodeId peer : {B, C, D, E}) {
    if (count([&](const TraceRecord& r) {
          return is_send(r, MessageKind::PositiveVote, peer, A);
        }) != 1) {
      failures.emplace_back(node_label(peer) + " did not vote for A");
    }
  }
  if (result.stats.messages(MessageKind::Announcement) != 1) {
    failures.emplace_back("expected exactly one announcement");
  }
  if (result.stats.non_heartbeat_messages() != 2 * 5 - 1) {
    failures.emplace_back("expected 9 messages before heartbeats, got " +
                          std::to_string(result.stats.non_heartbeat_messages()));
  }
  return failures;
}

std::vector<std::string> check_scenario_case2(const RunResult& result) {
  std::vector<std::string> failures;
  common_checks(result, failures);
  const auto& records = result.trace.records;

  const auto first = [&](auto pred) -> std::optional<std::size_t> {
    auto it = std::find_if(records.begin(), records.end(), pred);
    if (it == records.end()) return std::nullopt;
    return static_cast<std::size_t>(it - records.begin());
  };
  const auto d_votes_a = first([](const TraceRecord& r) {
    return is_send(r, MessageKind::PositiveVote, D, A);
  });
  const auto d_votes_b = first([](const TraceRecord& r) {
    return is_send(r, MessageKind::PositiveVote, D, B);
  });
  if (!d_votes_a || !d_votes_b || *d_votes_a > *d_votes_b) {
    failures.emplace_back("D did not vote for A and then for B");
  }
  if (!first([](const TraceRecord& r) { return is_send(r, MessageKind::NegativeVote, C, A); })) {
    failures.emplace_back("C did not answer A negatively");
  }
  if (!first([](const TraceRecord& r) { return is_send(r, MessageKind::PositiveVote, A, B); })) {
    failures.emplace_back("A did not vote for B");
  }
  if (!first([](const TraceRecord& r) {
        return is_change(r, A, NodeMode::Candidate, NodeMode::Basic);
      })) {
    failures.emplace_back("A did not revert from Candidate to Basic");
  }
  if (!first([](const TraceRecord& r) {
        return r.event == TraceEvent::Recv && r.node == A && r.message &&
               r.message->kind == MessageKind::NegativeVote;
      })) {
    failures.emplace_back("A received no negative vote");
  }
  std::set<NodeId> coordinators;
  for (const auto& r : records) {
    if (r.event == TraceEvent::StateChange && r.to_mode == NodeMode::Coordinator) {
      coordinators.insert(r.node);
    }
  }
  if (coordinators != std::set<NodeId>{B}) failures.emplace_back("B is not the sole coordinator");
  return failures;
}

std::string message_ladder(const Trace& trace) {
  std::string out;
  char line[160];
  for (const auto& r : trace.records) {
    switch (r.event) {
      case TraceEvent::Send: {
        const auto& m = *r.message;
        std::string extra;
        if (m.value) extra += " " + m.value->to_string();
        if (m.already_coordinator) extra += " [already coordinator]";
        if (m.leader) extra += " leader=" + node_label(*m.leader);
        std::snprintf(line, sizeof line, "%5lld ms  %s --%s--> %s%s\n",
                      static_cast<long long>(r.at), node_label(m.from).c_str(),
                      std::string(to_string(m.kind)).c_str(), node_label(m.to).c_str(),
                      extra.c_str());
        out += line;
        break;
      }
      case TraceEvent::StateChange:
        std::snprintf(line, sizeof line, "%5lld ms  %s is now %s (round %llu)\n",
                      static_cast<long long>(r.at), node_label(r.node).c_str(),
                      std::string(to_string(*r.to_mode)).c_str(),
                      static_cast<unsigned long long>(r.round));
        out += line;
        break;
      case TraceEvent::Crash:
      case TraceEvent::Recover:
        std::snprintf(line, sizeof line, "%5lld ms  %s %s\n", static_cast<long long>(r.at),
                      node_label(r.node).c_str(),
                      r.event == TraceEvent::Crash ? "crashed" : "recovered");
        out += line;
        break;
      case TraceEvent::Elected:
        std::snprintf(line, sizeof line, "%5lld ms  %s elected leader of round %llu\n",
                      static_cast<long long>(r.at), node_label(r.node).c_str(),
                      static_cast<unsigned long long>(r.round));
        out += line;
        break;
      default:
        break;
    }
  }
  return out;
}

}  // namespace rwelect
