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

#include <initializer_list>
#include <string_view>

#include <json.hpp>

#include "rwelect/config.hpp"
#include "rwelect/setup.hpp"
#include "rwelect/types.hpp"

// JSON forms shared by trace headers, run-config files and summaries.
// Readers accept missing keys (defaults apply) and reject unknown ones.

namespace rwelect {

void to_json(nlohmann::json& j, const ElectionConfig& c);
void from_json(const nlohmann::json& j, ElectionConfig& c);

void to_json(nlohmann::json& j, const LatencyModel& m);
void from_json(const nlohmann::json& j, LatencyModel& m);

void to_json(nlohmann::json& j, const Fault& f);
void from_json(const nlohmann::json& j, Fault& f);

void to_json(nlohmann::json& j, const StopRule& s);
void from_json(const nlohmann::json& j, StopRule& s);

void to_json(nlohmann::json& j, const SimSetup& s);
void from_json(const nlohmann::json& j, SimSetup& s);

void to_json(nlohmann::json& j, const RunStats& s);

/// Throws ConfigError naming the first key of `j` not in `allowed`.
void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<std::string_view> allowed,
                         std::string_view where);

}  // namespace rwelect

namespace nlohmann {

/// Six-decimal string on output; accepts a string or a number on input.
template <>
struct adl_serializer<rwelect::DrawValue> {
  static rwelect::DrawValue from_json(const json& j);
  static void from_json(const json& j, rwelect::DrawValue& v) { v = from_json(j); }
  static void to_json(json& j, rwelect::DrawValue v) { j = v.to_string(); }
};

}  // namespace nlohmann
