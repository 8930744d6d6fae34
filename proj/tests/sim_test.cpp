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


#include <gtest/gtest.h>

#include <algorithm>
#include <regex>

#include "rwelect/scenarios.hpp"
#include "rwelect/sim.hpp"
#include "trace_checks.hpp"

namespace rwelect {
namespace {

SimSetup basic_setup(std::uint64_t seed, bool optimized = false) {
  SimSetup s;
  s.seed = seed;
  s.config.optimized = optimized;
  return s;
}

void expect_clean(const RunResult& r) {
  const auto v = checks::all(r.trace);
  EXPECT_FALSE(v) << *v << " (seed " << r.trace.setup.seed << ")";
}

std::vector<const TraceRecord*> sends(const Trace& t, MessageKind kind) {
  std::vector<const TraceRecord*> out;
  for (const auto& r : t.records) {
    if (r.event == TraceEvent::Send && r.message->kind == kind) out.push_back(&r);
  }
  return out;
}

TEST(Scenario, SingleCandidate) {
  const RunResult r = run_scenario_case1();
  EXPECT_TRUE(check_scenario_case1(r).empty());
  EXPECT_EQ(r.stats.non_heartbeat_messages(), 9u);
  EXPECT_EQ(checks::non_heartbeat_sends(r.trace), 9u);
  EXPECT_EQ(r.stats.messages(MessageKind::Proposal), 4u);
  EXPECT_EQ(r.stats.messages(MessageKind::PositiveVote), 4u);
  EXPECT_EQ(r.stats.messages(MessageKind::Announcement), 1u);
  EXPECT_EQ(checks::entered(r.trace, NodeMode::Candidate),
            (std::map<RoundNumber, std::set<NodeId>>{{0, {0}}}));
  EXPECT_EQ(checks::entered(r.trace, NodeMode::Coordinator),
            (std::map<RoundNumber, std::set<NodeId>>{{0, {0}}}));
  ASSERT_TRUE(r.stats.leader);
  // The announced winner is the node that broadcasts heartbeats.
  const auto hb = sends(r.trace, MessageKind::Heartbeat);
  ASSERT_FALSE(hb.empty());
  EXPECT_EQ(hb.front()->node, *r.stats.leader);
  expect_clean(r);
}

TEST(Scenario, TwoCandidates) {
  const RunResult r = run_scenario_case2();
  EXPECT_TRUE(check_scenario_case2(r).empty());
  EXPECT_EQ(checks::entered(r.trace, NodeMode::Coordinator),
            (std::map<RoundNumber, std::set<NodeId>>{{0, {1}}}));
  EXPECT_EQ(checks::entered(r.trace, NodeMode::Leader).size(), 1u);

  // D grants A, then B.
  std::vector<NodeId> d_grants;
  for (const auto* s : sends(r.trace, MessageKind::PositiveVote)) {
    if (s->node == 3) d_grants.push_back(s->message->to);
  }
  EXPECT_EQ(d_grants, (std::vector<NodeId>{0, 1}));

  const auto neg = sends(r.trace, MessageKind::NegativeVote);
  EXPECT_TRUE(std::any_of(neg.begin(), neg.end(), [](const TraceRecord* s) {
    return s->node == 2 && s->message->to == 0;
  }));
  const bool a_reverts =
      std::any_of(r.trace.records.begin(), r.trace.records.end(), [](const TraceRecord& x) {
        return x.event == TraceEvent::StateChange && x.node == 0 &&
               x.from_mode == NodeMode::Candidate && x.to_mode == NodeMode::Basic;
      });
  EXPECT_TRUE(a_reverts);
  expect_clean(r);
}

TEST(Scenario, LadderMentionsEveryProtocolMessage) {
  const std::string ladder = message_ladder(run_scenario_case1().trace);
  const std::regex proposal("--Proposal-->");
  EXPECT_EQ(std::distance(std::sregex_iterator(ladder.begin(), ladder.end(), proposal),
                          std::sregex_iterator()),
            4);
}

TEST(Simulator, RecoversFromCrashedWinner) {
  // The first wheel winner dies before it can take over.
  SimSetup s = scenario_case1_setup();
  const NodeId first = *run(s).stats.leader;
  s.faults = {{7, FaultAction::Crash, first}};
  const RunResult r = run(s);
  const auto ann = sends(r.trace, MessageKind::Announcement);
  ASSERT_GE(ann.size(), 2u);
  EXPECT_EQ(*ann[0]->message->leader, first);
  EXPECT_NE(*ann[1]->message->leader, first);
  EXPECT_EQ(ann[1]->node, ann[0]->node);
  ASSERT_TRUE(r.stats.elected);
  EXPECT_NE(*r.stats.leader, first);
  expect_clean(r);
}

TEST(Simulator, MinorityUpBlocks) {
  SimSetup s = basic_setup(1);
  s.stop.max_time_ms = 3000;
  s.faults = {{0, FaultAction::Crash, 0}, {0, FaultAction::Crash, 1}, {0, FaultAction::Crash, 2}};
  const RunResult r = run(s);
  EXPECT_FALSE(r.stats.elected);
  EXPECT_TRUE(r.stats.blocked);
  EXPECT_TRUE(r.stats.liveness_failure);
  EXPECT_EQ(r.stats.non_heartbeat_messages(), 0u);
  expect_clean(r);
}

TEST(Simulator, RecoveryUnblocks) {
  SimSetup s = basic_setup(1);
  s.faults = {{0, FaultAction::Crash, 0},
              {0, FaultAction::Crash, 1},
              {0, FaultAction::Crash, 2},
              {500, FaultAction::Recover, 1}};
  const RunResult r = run(s);
  EXPECT_TRUE(r.stats.elected);
  EXPECT_GE(r.stats.election_ms, 500);
  expect_clean(r);
}

TEST(Simulator, SingleCrashStillElects) {
  for (bool optimized : {false, true}) {
    for (NodeId victim = 0; victim < 5; ++victim) {
      for (Millis at : {0, 15, 40, 90, 200}) {
        SimSetup s = basic_setup(victim * 100 + static_cast<std::uint64_t>(at), optimized);
        s.faults = {{at, FaultAction::Crash, victim}};
        const RunResult r = run(s);
        EXPECT_TRUE(r.stats.elected) << victim << '@' << at;
        EXPECT_FALSE(r.stats.safety_violation);
        expect_clean(r);
      }
    }
  }
}

TEST(Simulator, InvariantsHoldAcrossSeeds) {
  for (bool optimized : {false, true}) {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
      const RunResult r = run(basic_setup(seed, optimized));
      ASSERT_TRUE(r.stats.elected) << seed;
      EXPECT_EQ(checks::entered(r.trace, NodeMode::Leader).size(), 1u);
      EXPECT_EQ(checks::candidates_in_winning_round(r.trace), r.stats.candidates_seen);
      EXPECT_GT(r.stats.election_ms, 0);
      if (r.stats.candidates_total == 1) {
        EXPECT_EQ(r.stats.non_heartbeat_messages(), 9u) << seed;
      }
      expect_clean(r);
    }
  }
}

TEST(Simulator, EvenAndLargerClusters) {
  for (std::size_t n : {3u, 4u, 6u, 7u}) {
    SimSetup s;
    s.config = ElectionConfig::with_nodes(n);
    s.seed = 42;
    const RunResult r = run(s);
    EXPECT_TRUE(r.stats.elected) << n;
    if (r.stats.candidates_total == 1) {
      EXPECT_EQ(r.stats.non_heartbeat_messages(), 2 * n - 1);
    }
    expect_clean(r);
  }
}

TEST(Simulator, Deterministic) {
  const SimSetup s = basic_setup(42);
  EXPECT_EQ(to_jsonl(run(s).trace), to_jsonl(run(s).trace));
  const RunResult stats_only = run(s, false);
  EXPECT_TRUE(stats_only.trace.records.empty());
  EXPECT_EQ(stats_only.stats.election_ms, run(s).stats.election_ms);
}

TEST(Simulator, DifferentSeedsDifferInDraws) {
  const auto a = run(basic_setup(1)).trace;
  const auto b = run(basic_setup(2)).trace;
  ASSERT_EQ(a.records.front().event, TraceEvent::Draw);
  EXPECT_NE(a.records.front().draw, b.records.front().draw);
}

TEST(Simulator, FixedLatency) {
  SimSetup s = basic_setup(5);
  s.latency = LatencyModel::fixed(2);
  const RunResult r = run(s);
  EXPECT_TRUE(r.stats.elected);
  const auto first_send = sends(r.trace, MessageKind::Proposal).front();
  const auto first_recv = std::find_if(r.trace.records.begin(), r.trace.records.end(),
                                       [](const TraceRecord& x) {
                                         return x.event == TraceEvent::Recv &&
                                                x.message->kind == MessageKind::Proposal;
                                       });
  ASSERT_NE(first_recv, r.trace.records.end());
  EXPECT_EQ(first_recv->at, first_send->at + 2);
  expect_clean(r);
}

TEST(Simulator, IncompleteScriptIsAnError) {
  SimSetup s = basic_setup(0);
  s.latency = LatencyModel::scripted({{MessageKind::Proposal, {}, {}, 3, false}});
  EXPECT_THROW(run(s), ScriptError);
}

TEST(Replay, ReproducesTrace) {
  for (const RunResult& r : {run(basic_setup(9)), run_scenario_case2()}) {
    const std::string text = to_jsonl(r.trace);
    EXPECT_EQ(to_jsonl(replay(text).trace), text);
  }
  SimSetup faulty = basic_setup(3);
  faulty.faults = {{20, FaultAction::Crash, 1}, {300, FaultAction::Recover, 1}};
  const std::string text = to_jsonl(run(faulty).trace);
  EXPECT_NO_THROW(replay(text));
}

TEST(Replay, CorruptedHeaderDivergesAtFirstRecord) {
  const std::string text = to_jsonl(run(basic_setup(9)).trace);
  std::string bad = std::regex_replace(text, std::regex("\"seed\":9"), "\"seed\":10",
                                       std::regex_constants::format_first_only);
  ASSERT_NE(bad, text);
  try {
    replay(bad);
    FAIL() << "expected divergence";
  } catch (const ReplayDivergence& e) {
    EXPECT_EQ(e.record(), 1u);
  }
}

TEST(Replay, EditedRecordIsLocated) {
  const std::string text = to_jsonl(run(basic_setup(9)).trace);
  // Drop the fifth record line.
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    lines.push_back(text.substr(pos, nl - pos + 1));
    pos = nl + 1;
  }
  std::string edited;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i != 5) edited += lines[i];
  }
  try {
    replay(edited);
    FAIL() << "expected divergence";
  } catch (const ReplayDivergence& e) {
    EXPECT_EQ(e.record(), 5u);
  }
  EXPECT_THROW(replay("{\"format\":\"other\"}\n"), TraceFormatError);
}

TEST(TraceFormat, HeaderRoundTrip) {
  SimSetup s = scenario_case2_setup();
  EXPECT_EQ(parse_header(header_line(s)), s);
  const std::string line = header_line(s);
  EXPECT_NE(line.find("\"format\":\"rwelect-trace\""), std::string::npos);
  EXPECT_NE(line.find("\"version\":1"), std::string::npos);
}

}  // namespace
}  // namespace rwelect
