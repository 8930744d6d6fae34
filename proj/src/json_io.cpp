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

#include "rwelect/json_io.hpp"

#include <algorithm>
#include <string>

#include "rwelect/message.hpp"

namespace rwelect {

using nlohmann::json;

namespace {

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) it->get_to(out);
}

std::string_view to_string(LatencyModel::Kind kind) {
  switch (kind) {
    case LatencyModel::Kind::Fixed: return "fixed";
    case LatencyModel::Kind::UniformRange: return "uniform";
    case LatencyModel::Kind::Scripted: return "scripted";
  }
  return "?";
}

}  // namespace

void reject_unknown_keys(const json& j, std::initializer_list<std::string_view> allowed,
                         std::string_view where) {
  if (!j.is_object()) throw ConfigError(std::string(where) + ": expected a JSON object");
  for (const auto& item : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw ConfigError(std::string(where) + ": unknown key '" + item.key() + "'");
    }
  }
}

void to_json(json& j, const ElectionConfig& c) {
  j = json{{"nodes", c.size()},
           {"threshold", c.threshold},
           {"streak_len", c.streak_len},
           {"draw_period_ms", c.draw_period_ms},
           {"vote_timeout_ms", c.vote_timeout_ms},
           {"leader_ack_timeout_ms", c.leader_ack_timeout_ms},
           {"heartbeat_interval_ms", c.heartbeat_interval_ms},
           {"leader_miss_limit", c.leader_miss_limit},
           {"optimized", c.optimized}};
}

void from_json(const json& j, ElectionConfig& c) {
  reject_unknown_keys(j,
                      {"nodes", "threshold", "streak_len", "draw_period_ms", "vote_timeout_ms",
                       "leader_ack_timeout_ms", "heartbeat_interval_ms", "leader_miss_limit",
                       "optimized"},
                      "election");
  std::size_t nodes = c.size() ? c.size() : 5;
  read_opt(j, "nodes", nodes);
  ElectionConfig out = ElectionConfig::with_nodes(nodes);
  out.threshold = c.threshold;
  out.streak_len = c.streak_len;
  out.draw_period_ms = c.draw_period_ms;
  out.vote_timeout_ms = c.vote_timeout_ms;
  out.leader_ack_timeout_ms = c.leader_ack_timeout_ms;
  out.heartbeat_interval_ms = c.heartbeat_interval_ms;
  out.leader_miss_limit = c.leader_miss_limit;
  out.optimized = c.optimized;
  read_opt(j, "threshold", out.threshold);
  read_opt(j, "streak_len", out.streak_len);
  read_opt(j, "draw_period_ms", out.draw_period_ms);
  read_opt(j, "vote_timeout_ms", out.vote_timeout_ms);
  read_opt(j, "leader_ack_timeout_ms", out.leader_ack_timeout_ms);
  read_opt(j, "heartbeat_interval_ms", out.heartbeat_interval_ms);
  read_opt(j, "leader_miss_limit", out.leader_miss_limit);
  read_opt(j, "optimized", out.optimized);
  c = std::move(out);
}

void to_json(json& j, const LatencyModel& m) {
  j = json{{"kind", to_string(m.kind)}};
  switch (m.kind) {
    case LatencyModel::Kind::Fixed:
      j["delay"] = m.lo;
      break;
    case LatencyModel::Kind::UniformRange:
      j["lo"] = m.lo;
      j["hi"] = m.hi;
      break;
    case LatencyModel::Kind::Scripted: {
      json script = json::array();
      for (const auto& e : m.script) {
        json entry{{"delay", e.delay}, {"repeat", e.repeat}};
        if (e.kind) entry["kind"] = to_string(*e.kind);
        if (e.from) entry["from"] = *e.from;
        if (e.to) entry["to"] = *e.to;
        script.push_back(std::move(entry));
      }
      j["script"] = std::move(script);
      break;
    }
  }
}

void from_json(const json& j, LatencyModel& m) {
  reject_unknown_keys(j, {"kind", "delay", "lo", "hi", "script"}, "latency");
  const auto kind = j.value("kind", std::string("uniform"));
  if (kind == "fixed") {
    m = LatencyModel::fixed(j.value("delay", Millis{2}));
  } else if (kind == "uniform") {
    m = LatencyModel::uniform(j.value("lo", Millis{1}), j.value("hi", Millis{5}));
  } else if (kind == "scripted") {
    std::vector<ScriptedDelay> script;
    for (const auto& e : j.at("script")) {
      reject_unknown_keys(e, {"kind", "from", "to", "delay", "repeat"}, "latency.script");
      ScriptedDelay d;
      if (e.contains("kind")) d.kind = parse_message_kind(e.at("kind").get<std::string>());
      if (e.contains("from")) d.from = e.at("from").get<NodeId>();
      if (e.contains("to")) d.to = e.at("to").get<NodeId>();
      d.delay = e.value("delay", Millis{1});
      d.repeat = e.value("repeat", false);
      script.push_back(d);
    }
    m = LatencyModel::scripted(std::move(script));
  } else {
    throw ConfigError("latency: unknown kind '" + kind + "'");
  }
}

void to_json(json& j, const Fault& f) {
  j = json{{"at", f.at},
           {"action", f.action == FaultAction::Crash ? "crash" : "recover"},
           {"node", f.node}};
}

void from_json(const json& j, Fault& f) {
  reject_unknown_keys(j, {"at", "action", "node"}, "fault");
  f.at = j.at("at").get<Millis>();
  f.node = j.at("node").get<NodeId>();
  const auto action = j.value("action", std::string("crash"));
  if (action == "crash") {
    f.action = FaultAction::Crash;
  } else if (action == "recover") {
    f.action = FaultAction::Recover;
  } else {
    throw ConfigError("fault: unknown action '" + action + "'");
  }
}

void to_json(json& j, const StopRule& s) {
  j = json{{"max_time_ms", s.max_time_ms}, {"stable_heartbeats", s.stable_heartbeats}};
}

void from_json(const json& j, StopRule& s) {
  reject_unknown_keys(j, {"max_time_ms", "stable_heartbeats"}, "stop");
  read_opt(j, "max_time_ms", s.max_time_ms);
  read_opt(j, "stable_heartbeats", s.stable_heartbeats);
}

void to_json(json& j, const SimSetup& s) {
  json scripts = json::object();
  for (const auto& [node, draws] : s.draw_script) scripts[std::to_string(node)] = draws;
  j = json{{"election", s.config}, {"seed", s.seed},   {"latency", s.latency},
           {"faults", s.faults},   {"stop", s.stop},   {"draw_script", scripts}};
}

void from_json(const json& j, SimSetup& s) {
  reject_unknown_keys(j, {"election", "seed", "latency", "faults", "stop", "draw_script"},
                      "setup");
  read_opt(j, "election", s.config);
  read_opt(j, "seed", s.seed);
  read_opt(j, "latency", s.latency);
  read_opt(j, "faults", s.faults);
  read_opt(j, "stop", s.stop);
  s.draw_script.clear();
  if (auto it = j.find("draw_script"); it != j.end()) {
    for (const auto& item : it->items()) {
      s.draw_script[static_cast<NodeId>(std::stoul(item.key()))] =
          item.value().get<std::vector<DrawValue>>();
    }
  }
}

void to_json(json& j, const RunStats& s) {
  json by_kind = json::object();
  for (std::size_t i = 0; i < kMessageKindCount; ++i) {
    by_kind[std::string(to_string(static_cast<MessageKind>(i)))] = s.messages_by_kind[i];
  }
  j = json{{"elected", s.elected},
           {"election_ms", s.election_ms},
           {"leader", s.leader ? json(*s.leader) : json(nullptr)},
           {"leader_round", s.leader_round},
           {"candidates_seen", s.candidates_seen},
           {"candidates_total", s.candidates_total},
           {"rounds_used", s.rounds_used},
           {"messages_by_kind", by_kind},
           {"blocked", s.blocked},
           {"liveness_failure", s.liveness_failure},
           {"safety_violation", s.safety_violation},
           {"end_ms", s.end_ms}};
}

}  // namespace rwelect

namespace nlohmann {

rwelect::DrawValue adl_serializer<rwelect::DrawValue>::from_json(const json& j) {
  if (j.is_string()) return rwelect::DrawValue::parse(j.get<std::string>());
  if (j.is_number()) return rwelect::DrawValue::from_double(j.get<double>());
  throw rwelect::ConfigError("expected a fraction in (0, 1)");
}

}  // namespace nlohmann
