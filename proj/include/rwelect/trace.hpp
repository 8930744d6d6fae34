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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rwelect/message.hpp"
#include "rwelect/setup.hpp"
#include "rwelect/types.hpp"

namespace rwelect {

inline constexpr int kTraceFormatVersion = 1;
inline constexpr std::string_view kTraceFormatName = "rwelect-trace";

enum class TraceEvent : std::uint8_t {
  Draw,
  Send,
  Recv,
  StateChange,
  Timeout,
  Crash,
  Recover,
  Elected,
};

std::string_view to_string(TraceEvent event);

struct TraceRecord {
  std::uint64_t seq = 0;
  Millis at = 0;
  NodeId node = 0;
  TraceEvent event = TraceEvent::Draw;
  /// The node's round after the event.
  RoundNumber round = 0;

  std::optional<Message> message;  // send, recv
  std::optional<DrawValue> draw;   // draw
  std::optional<NodeMode> from_mode;  // state_change
  std::optional<NodeMode> to_mode;    // state_change
  /// Free-form qualifier: drop reason, fired deadline, "blocked".
  std::string note;

  bool operator==(const TraceRecord&) const = default;
};

struct Trace {
  SimSetup setup;
  std::vector<TraceRecord> records;
};

class TraceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Re-execution disagreed with a recorded trace. `record` is 1-based.
class ReplayDivergence : public std::runtime_error {
 public:
  ReplayDivergence(std::size_t record, std::string expected, std::string actual);

  std::size_t record() const noexcept { return record_; }
  const std::string& expected() const noexcept { return expected_; }
  const std::string& actual() const noexcept { return actual_; }

 private:
  std::size_t record_;
  std::string expected_;
  std::string actual_;
};

std::string header_line(const SimSetup& setup);
std::string record_line(const TraceRecord& record);

/// Header line followed by one line per record, each '\n'-terminated.
std::string to_jsonl(const Trace& trace);

/// Throws TraceFormatError on a malformed header or unknown version.
SimSetup parse_header(std::string_view line);

void write_trace(const Trace& trace, const std::string& path);

}  // namespace rwelect
