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

#include "rwelect/trace.hpp"

#include <fstream>

#include "rwelect/json_io.hpp"
#include "rwelect/sim.hpp"

namespace rwelect {

using nlohmann::json;

std::string_view to_string(TraceEvent event) {
  switch (event) {
    case TraceEvent::Draw: return "draw";
    case TraceEvent::Send: return "send";
    case TraceEvent::Recv: return "recv";
    case TraceEvent::StateChange: return "state_change";
    case TraceEvent::Timeout: return "timeout";
    case TraceEvent::Crash: return "crash";
    case TraceEvent::Recover: return "recover";
    case TraceEvent::Elected: return "elected";
  }
  return "?";
}

ReplayDivergence::ReplayDivergence(std::size_t record, std::string expected,
                                   std::string actual)
    : std::runtime_error("replay diverged at record " + std::to_string(record)),
      record_(record),
      expected_(std::move(expected)),
      actual_(std::move(actual)) {}

std::string header_line(const SimSetup& setup) {
  json j{{"format", kTraceFormatName}, {"version", kTraceFormatVersion}, {"setup", setup}};
  return j.dump();
}

std::string record_line(const TraceRecord& r) {
  json detail = json::object();
  if (r.message) {
    const auto& m = *r.message;
    detail["kind"] = to_string(m.kind);
    detail["from"] = m.from;
    detail["to"] = m.to;
    detail["round"] = m.round;
    if (m.value) detail["value"] = *m.value;
    if (m.kind == MessageKind::NegativeVote) detail["already_coordinator"] = m.already_coordinator;
    if (m.leader) detail["leader"] = *m.leader;
  }
  if (r.draw) detail["value"] = *r.draw;
  if (r.from_mode) detail["from_mode"] = to_string(*r.from_mode);
  if (r.to_mode) detail["to_mode"] = to_string(*r.to_mode);
  if (!r.note.empty()) detail["note"] = r.note;
  json j{{"seq", r.seq},   {"at", r.at},       {"node", r.node},
         {"event", to_string(r.event)}, {"round", r.round}, {"detail", std::move(detail)}};
  return j.dump();
}

std::string to_jsonl(const Trace& trace) {
  std::string out = header_line(trace.setup);
  out += '\n';
  for (const auto& r : trace.records) {
    out += record_line(r);
    out += '\n';
  }
  return out;
}

SimSetup parse_header(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw TraceFormatError(std::string("trace header is not JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("format", std::string()) != kTraceFormatName) {
    throw TraceFormatError("not an rwelect trace header");
  }
  if (j.value("version", 0) != kTraceFormatVersion) {
    throw TraceFormatError("unsupported trace format version");
  }
  try {
    return j.at("setup").get<SimSetup>();
  } catch (const json::exception& e) {
    throw TraceFormatError(std::string("bad trace header: ") + e.what());
  } catch (const ConfigError& e) {
    throw TraceFormatError(std::string("bad trace header: ") + e.what());
  }
}

RunResult replay(std::string_view jsonl) {
  std::vector<std::string_view> lines;
  while (!jsonl.empty()) {
    const auto nl = jsonl.find('\n');
    lines.push_back(jsonl.substr(0, nl));
    if (nl == std::string_view::npos) break;
    jsonl.remove_prefix(nl + 1);
  }
  if (lines.empty()) throw TraceFormatError("empty trace");

  RunResult fresh = run(parse_header(lines.front()));
  const auto& records = fresh.trace.records;
  const std::size_t recorded = lines.size() - 1;
  const std::size_t common = std::min(recorded, records.size());
  for (std::size_t i = 0; i < common; ++i) {
    std::string actual = record_line(records[i]);
    if (actual != lines[i + 1]) {
      throw ReplayDivergence(i + 1, std::string(lines[i + 1]), std::move(actual));
    }
  }
  if (recorded != records.size()) {
    const std::size_t at = common + 1;
    throw ReplayDivergence(at, at <= recorded ? std::string(lines[at]) : std::string(),
                           at <= records.size() ? record_line(records[at - 1]) : std::string());
  }
  return fresh;
}

void write_trace(const Trace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open trace file for writing: " + path);
  out << to_jsonl(trace);
  if (!out) throw std::runtime_error("failed writing trace file: " + path);
}

}  // namespace rwelect
