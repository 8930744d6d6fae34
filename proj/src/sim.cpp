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

#include "rwelect/sim.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <utility>

#include "rwelect/node.hpp"
#include "rwelect/random.hpp"

namespace rwelect {

LatencyModel LatencyModel::fixed(Millis delay) {
  LatencyModel m;
  m.kind = Kind::Fixed;
  m.lo = m.hi = delay;
  return m;
}

LatencyModel LatencyModel::uniform(Millis lo, Millis hi) {
  LatencyModel m;
  m.kind = Kind::UniformRange;
  m.lo = lo;
  m.hi = hi;
  return m;
}

LatencyModel LatencyModel::scripted(std::vector<ScriptedDelay> script) {
  LatencyModel m;
  m.kind = Kind::Scripted;
  m.script = std::move(script);
  m.lo = m.hi = 1;
  for (const auto& e : m.script) m.hi = std::max(m.hi, e.delay);
  return m;
}

Millis LatencyModel::max_delay() const {
  if (kind != Kind::Scripted) return hi;
  Millis worst = 1;
  for (const auto& e : script) worst = std::max(worst, e.delay);
  return worst;
}

void LatencyModel::validate() const {
  switch (kind) {
    case Kind::Fixed:
    case Kind::UniformRange:
      if (lo < 1) throw ConfigError("latency must be at least 1 ms");
      if (lo > hi) throw ConfigError("latency range has lo > hi");
      break;
    case Kind::Scripted:
      if (script.empty()) throw ConfigError("scripted latency needs at least one entry");
      for (const auto& e : script) {
        if (e.delay < 1) throw ConfigError("scripted delay must be at least 1 ms");
      }
      break;
  }
}

void SimSetup::validate() const {
  config.validate();
  latency.validate();
  for (const auto& f : faults) {
    if (f.at < 0) throw ConfigError("fault time must be non-negative");
    if (!config.contains(f.node)) {
      throw ConfigError("fault names unknown node " + std::to_string(f.node));
    }
  }
  for (const auto& [node, draws] : draw_script) {
    if (!config.contains(node)) {
      throw ConfigError("draw script names unknown node " + std::to_string(node));
    }
  }
  if (stop.max_time_ms <= 0) throw ConfigError("max time must be positive");
}

std::uint64_t RunStats::non_heartbeat_messages() const {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < kMessageKindCount; ++i) {
    if (static_cast<MessageKind>(i) != MessageKind::Heartbeat) total += messages_by_kind[i];
  }
  return total;
}

namespace {

// Stream ids for mix_seed: node i draws from stream i, takes wheel/response
// entropy from stream i + 2^32; message latencies come from stream 2^33.
constexpr std::uint64_t kDecisionStream = 1ULL << 32;
constexpr std::uint64_t kNetworkStream = 1ULL << 33;

struct EventLater {
  bool operator()(const SimEvent& a, const SimEvent& b) const {
    return std::tie(a.at, a.seq) > std::tie(b.at, b.seq);
  }
};

class Simulator {
 public:
  Simulator(const SimSetup& setup, bool keep_trace)
      : setup_(setup),
        protocol_(setup.config),
        keep_trace_(keep_trace),
        network_(mix_seed(setup.seed, kNetworkStream)),
        script_used_(setup.latency.script.size(), false) {
    setup_.validate();
    for (NodeId id : setup_.config.membership) {
      slots_.emplace(id, Slot{protocol_.init_node(id), SeededRng(mix_seed(setup_.seed, id)),
                              SeededRng(mix_seed(setup_.seed, id + kDecisionStream)),
                              0, false, {}});
    }
    for (const auto& f : setup_.faults) last_fault_at_ = std::max(last_fault_at_, f.at);
  }

  RunResult run() {
    result_.trace.setup = setup_;
    for (const auto& f : setup_.faults) {
      push(f.at, f.action == FaultAction::Crash ? SimEvent::Kind::Crash
                                                : SimEvent::Kind::Recover,
           f.node);
    }
    for (auto& [id, slot] : slots_) {
      push(0, SimEvent::Kind::DrawTick, id);
      slot.tick_pending = true;
    }

    while (!queue_.empty()) {
      SimEvent ev = queue_.top();
      if (ev.at > setup_.stop.max_time_ms) break;
      queue_.pop();
      now_ = ev.at;
      dispatch(ev);
      if (check_stop()) break;
    }
    finish();
    return std::move(result_);
  }

 private:
  struct Slot {
    NodeState state;
    SeededRng draws;
    SeededRng decisions;
    std::size_t scripted = 0;
    bool tick_pending = false;
    std::set<Millis> timers;
  };

  void push(Millis at, SimEvent::Kind kind, NodeId node,
            std::optional<Message> message = std::nullopt) {
    queue_.push(SimEvent{at, next_event_seq_++, kind, node, std::move(message)});
  }

  TraceRecord& record(NodeId node, TraceEvent event) {
    TraceRecord r;
    r.seq = next_record_seq_++;
    r.at = now_;
    r.node = node;
    r.event = event;
    r.round = slots_.at(node).state.round;
    scratch_.push_back(std::move(r));
    return scratch_.back();
  }

  void flush() {
    if (keep_trace_) {
      for (auto& r : scratch_) result_.trace.records.push_back(std::move(r));
    }
    scratch_.clear();
  }

  void dispatch(const SimEvent& ev) {
    switch (ev.kind) {
      case SimEvent::Kind::DrawTick: on_tick(ev.node); break;
      case SimEvent::Kind::Deliver: on_deliver(*ev.message); break;
      case SimEvent::Kind::TimerCheck: on_timer(ev.node); break;
      case SimEvent::Kind::Crash: on_crash(ev.node); break;
      case SimEvent::Kind::Recover: on_recover(ev.node); break;
    }
    flush();
  }

  void on_tick(NodeId id) {
    auto& slot = slots_.at(id);
    slot.tick_pending = false;
    if (slot.state.mode != NodeMode::Basic || !slot.state.drawing_enabled) return;
    DrawValue draw = next_value(id, slot);
    Step step = protocol_.on_draw(slot.state, draw, now_);
    auto& r = record(id, TraceEvent::Draw);
    r.draw = draw;
    r.round = step.state.round;
    if (step.dropped) r.note = step.note;
    apply(id, std::move(step));
  }

  DrawValue next_value(NodeId id, Slot& slot) {
    auto it = setup_.draw_script.find(id);
    if (it != setup_.draw_script.end() && slot.scripted < it->second.size()) {
      return it->second[slot.scripted++];
    }
    return next_draw(slot.draws);
  }

  void on_deliver(const Message& msg) {
    auto& slot = slots_.at(msg.to);
    if (slot.state.mode == NodeMode::Down) return;  // crash-stop: lost
    Step step = protocol_.handle_message(slot.state, msg, now_, slot.decisions.next_u64());
    auto& r = record(msg.to, TraceEvent::Recv);
    r.message = msg;
    r.round = step.state.round;
    if (step.dropped) {
      r.note = "dropped: " + step.note;
    } else {
      r.note = step.note;
    }
    apply(msg.to, std::move(step));
  }

  void on_timer(NodeId id) {
    auto& slot = slots_.at(id);
    slot.timers.erase(now_);
    if (slot.state.mode == NodeMode::Down) return;
    auto deadline = ElectionProtocol::next_deadline(slot.state);
    if (!deadline || *deadline > now_) {
      schedule(id);
      return;
    }
    Step step = protocol_.on_timeout(slot.state, now_, slot.decisions.next_u64());
    auto& r = record(id, TraceEvent::Timeout);
    r.round = step.state.round;
    r.note = step.note;
    apply(id, std::move(step));
  }

  void on_crash(NodeId id) {
    auto& slot = slots_.at(id);
    if (slot.state.mode == NodeMode::Down) return;
    const NodeMode before = slot.state.mode;
    slot.state = protocol_.crash(slot.state);
    auto& r = record(id, TraceEvent::Crash);
    r.from_mode = before;
    r.to_mode = NodeMode::Down;
    for (auto& [other, s] : slots_) {
      if (other != id && s.state.mode != NodeMode::Down) {
        s.state = protocol_.peer_status(s.state, id, false);
      }
    }
  }

  void on_recover(NodeId id) {
    auto& slot = slots_.at(id);
    if (slot.state.mode != NodeMode::Down) return;
    std::set<NodeId> live{id};
    for (auto& [other, s] : slots_) {
      if (s.state.mode != NodeMode::Down) live.insert(other);
    }
    slot.state = protocol_.recover(slot.state, now_, live);
    auto& r = record(id, TraceEvent::Recover);
    r.from_mode = NodeMode::Down;
    r.to_mode = slot.state.mode;
    for (auto& [other, s] : slots_) {
      if (other != id && s.state.mode != NodeMode::Down) {
        s.state = protocol_.peer_status(s.state, id, true);
      }
    }
    schedule(id);
  }

  void apply(NodeId id, Step step) {
    auto& slot = slots_.at(id);
    const NodeMode before = slot.state.mode;
    slot.state = std::move(step.state);
    const NodeMode after = slot.state.mode;
    if (before != after) {
      auto& r = record(id, TraceEvent::StateChange);
      r.from_mode = before;
      r.to_mode = after;
      if (after == NodeMode::Candidate) {
        candidates_by_round_[slot.state.round].insert(id);
        candidates_ever_.insert(id);
      }
      if (after == NodeMode::Leader) {
        auto& leaders = leaders_by_round_[slot.state.round];
        leaders.insert(id);
        if (leaders.size() > 1) result_.stats.safety_violation = true;
      }
    }
    max_round_ = std::max(max_round_, slot.state.round);
    for (auto& msg : step.out) send(std::move(msg));
    schedule(id);
  }

  void send(Message msg) {
    auto& r = record(msg.from, TraceEvent::Send);
    r.message = msg;
    ++result_.stats.messages_by_kind[static_cast<std::size_t>(msg.kind)];
    const Millis delay = latency(msg);
    const NodeId to = msg.to;
    push(now_ + delay, SimEvent::Kind::Deliver, to, std::move(msg));
  }

  Millis latency(const Message& msg) {
    const auto& model = setup_.latency;
    switch (model.kind) {
      case LatencyModel::Kind::Fixed:
        return model.lo;
      case LatencyModel::Kind::UniformRange: {
        const auto span = static_cast<std::uint64_t>(model.hi - model.lo + 1);
        return model.lo + static_cast<Millis>(scale_word(network_.next_u64(), span));
      }
      case LatencyModel::Kind::Scripted:
        for (std::size_t i = 0; i < model.script.size(); ++i) {
          const auto& e = model.script[i];
          if (script_used_[i]) continue;
          if (e.kind && *e.kind != msg.kind) continue;
          if (e.from && *e.from != msg.from) continue;
          if (e.to && *e.to != msg.to) continue;
          if (!e.repeat) script_used_[i] = true;
          return e.delay;
        }
        throw ScriptError("no scripted delay for " + describe(msg));
    }
    return 1;
  }

  void schedule(NodeId id) {
    auto& slot = slots_.at(id);
    const auto& s = slot.state;
    if (s.mode == NodeMode::Down) return;
    if (s.mode == NodeMode::Basic && s.drawing_enabled && !slot.tick_pending) {
      push(now_ + setup_.config.draw_period_ms, SimEvent::Kind::DrawTick, id);
      slot.tick_pending = true;
    }
    if (auto deadline = ElectionProtocol::next_deadline(s)) {
      const Millis at = std::max(*deadline, now_);
      if (slot.timers.insert(at).second) push(at, SimEvent::Kind::TimerCheck, id);
    }
  }

  // Leader whose heartbeat is known to a majority of live nodes, provided no
  // live node has moved past its round.
  std::optional<std::pair<NodeId, RoundNumber>> settled_leader() const {
    const auto majority = setup_.config.majority();
    for (const auto& [id, slot] : slots_) {
      if (slot.state.mode != NodeMode::Leader) continue;
      const RoundNumber round = slot.state.round;
      std::size_t following = 0;
      bool newer = false;
      for (const auto& [other, s] : slots_) {
        if (s.state.mode == NodeMode::Down) continue;
        if (s.state.round > round) newer = true;
        if (s.state.round == round && s.state.leader == id) ++following;
      }
      if (!newer && following >= majority) return std::make_pair(id, round);
    }
    return std::nullopt;
  }

  bool check_stop() {
    auto settled = settled_leader();
    if (settled != stable_) {
      stable_ = settled;
      if (stable_) {
        stable_since_ = now_;
        auto& r = record(stable_->first, TraceEvent::Elected);
        r.round = stable_->second;
        flush();
      }
    }
    if (!stable_) return false;
    const Millis hold = setup_.config.heartbeat_interval_ms *
                        static_cast<Millis>(setup_.stop.stable_heartbeats);
    return now_ >= last_fault_at_ && now_ >= stable_since_ + hold;
  }

  void finish() {
    auto& st = result_.stats;
    st.end_ms = now_;
    st.candidates_total = static_cast<std::uint32_t>(candidates_ever_.size());
    if (stable_) {
      st.elected = true;
      st.election_ms = stable_since_;
      st.leader = stable_->first;
      st.leader_round = stable_->second;
      st.rounds_used = stable_->second + 1;
      auto it = candidates_by_round_.find(stable_->second);
      st.candidates_seen =
          it == candidates_by_round_.end() ? 0 : static_cast<std::uint32_t>(it->second.size());
    } else {
      st.liveness_failure = true;
      st.rounds_used = max_round_ + 1;
      std::size_t live = 0;
      for (const auto& [id, slot] : slots_) {
        if (slot.state.mode != NodeMode::Down) ++live;
      }
      st.blocked = live < setup_.config.majority();
    }
  }

  SimSetup setup_;
  ElectionProtocol protocol_;
  bool keep_trace_;
  SeededRng network_;
  std::vector<bool> script_used_;
  std::map<NodeId, Slot> slots_;
  std::priority_queue<SimEvent, std::vector<SimEvent>, EventLater> queue_;
  std::uint64_t next_event_seq_ = 0;
  std::uint64_t next_record_seq_ = 0;
  Millis now_ = 0;
  Millis last_fault_at_ = 0;
  RoundNumber max_round_ = 0;
  std::vector<TraceRecord> scratch_;
  std::map<RoundNumber, std::set<NodeId>> candidates_by_round_;
  std::map<RoundNumber, std::set<NodeId>> leaders_by_round_;
  std::set<NodeId> candidates_ever_;
  std::optional<std::pair<NodeId, RoundNumber>> stable_;
  Millis stable_since_ = 0;
  RunResult result_;
};

}  // namespace

RunResult run(const SimSetup& setup, bool keep_trace) {
  return Simulator(setup, keep_trace).run();
}

}  // namespace rwelect
