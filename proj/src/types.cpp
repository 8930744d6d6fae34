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

#include "rwelect/types.hpp"

#include <cmath>
#include <cstdio>

namespace rwelect {

DrawValue DrawValue::from_micros(std::uint32_t micros) {
  if (micros < kMinMicros || micros > kMaxMicros) {
    throw ConfigError("draw value must lie strictly between 0 and 1, got " +
                      std::to_string(micros) + " micro-units");
  }
  return DrawValue(micros);
}

DrawValue DrawValue::from_double(double value) {
  if (!std::isfinite(value) || value <= 0.0 || value >= 1.0) {
    throw ConfigError("draw value must lie strictly between 0 and 1");
  }
  const double scaled = std::round(value * kScale);
  return from_micros(static_cast<std::uint32_t>(scaled));
}

DrawValue DrawValue::parse(std::string_view text) {
  const std::string original(text);
  if (text.starts_with("0.")) {
    text.remove_prefix(2);
  } else if (text.starts_with(".")) {
    text.remove_prefix(1);
  } else {
    throw ConfigError("not a fraction in (0, 1): '" + original + "'");
  }
  if (text.empty() || text.size() > 6) {
    throw ConfigError("expected 1 to 6 decimal places: '" + original + "'");
  }
  std::uint32_t micros = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    std::uint32_t digit = 0;
    if (i < text.size()) {
      const char c = text[i];
      if (c < '0' || c > '9') {
        throw ConfigError("not a fraction in (0, 1): '" + original + "'");
      }
      digit = static_cast<std::uint32_t>(c - '0');
    }
    micros = micros * 10 + digit;
  }
  return from_micros(micros);
}

std::string DrawValue::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0.%06u", static_cast<unsigned>(micros_));
  return buf;
}

std::string_view to_string(NodeMode mode) {
  switch (mode) {
    case NodeMode::Basic: return "Basic";
    case NodeMode::Candidate: return "Candidate";
    case NodeMode::Coordinator: return "Coordinator";
    case NodeMode::Leader: return "Leader";
    case NodeMode::Down: return "Down";
  }
  return "?";
}

NodeMode parse_node_mode(std::string_view text) {
  for (auto mode : {NodeMode::Basic, NodeMode::Candidate, NodeMode::Coordinator,
                    NodeMode::Leader, NodeMode::Down}) {
    if (to_string(mode) == text) return mode;
  }
  throw ConfigError("unknown node mode '" + std::string(text) + "'");
}

std::string node_label(NodeId id) {
  if (id < 26) return std::string(1, static_cast<char>('A' + id));
  return std::to_string(id);
}

}  // namespace rwelect
