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

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rwelect {

using NodeId = std::uint32_t;
using RoundNumber = std::uint64_t;

/// Virtual time in integer milliseconds.
using Millis = std::int64_t;

/// One pre-drawn random word handed to the state machine with every input
/// that may need randomness (wheel spins, first-response draws).
using Entropy = std::uint64_t;

/// Bad configuration, membership or parameter values.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A state-machine operation was invoked outside its precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A random value in the open interval (0, 1) held at exactly six decimal
/// places, stored as integer micro-units 1..999999.
class DrawValue {
 public:
  static constexpr std::uint32_t kScale = 1'000'000;
  static constexpr std::uint32_t kMinMicros = 1;
  static constexpr std::uint32_t kMaxMicros = kScale - 1;

  /// Throws ConfigError unless 1 <= micros <= 999999.
  static DrawValue from_micros(std::uint32_t micros);

  /// Rounds to the nearest micro-unit; throws if the result leaves (0, 1).
  static DrawValue from_double(double value);

  /// Parses decimal text such as "0.85" or "0.910000" (at most six decimals).
  static DrawValue parse(std::string_view text);

  constexpr std::uint32_t micros() const noexcept { return micros_; }
  constexpr double to_double() const noexcept {
    return static_cast<double>(micros_) / kScale;
  }

  /// Fixed six-decimal rendering, e.g. "0.910000".
  std::string to_string() const;

  friend constexpr auto operator<=>(DrawValue, DrawValue) = default;

 private:
  constexpr explicit DrawValue(std::uint32_t micros) noexcept : micros_(micros) {}

  std::uint32_t micros_;
};

enum class NodeMode : std::uint8_t { Basic, Candidate, Coordinator, Leader, Down };

std::string_view to_string(NodeMode mode);
NodeMode parse_node_mode(std::string_view text);

/// "A".."Z" for small ids, the decimal id otherwise.
std::string node_label(NodeId id);

}  // namespace rwelect
