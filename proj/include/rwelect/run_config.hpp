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

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "rwelect/setup.hpp"

namespace rwelect {

/// Run-configuration file: a simulation setup plus output locations.
///
///   {
///     "election": {"nodes": 5, "threshold": 0.85, "streak_len": 3, ...},
///     "seed": 42,
///     "latency": {"kind": "uniform", "lo": 1, "hi": 5},
///     "faults": [{"at": 0, "action": "crash", "node": 2}],
///     "stop": {"max_time_ms": 30000, "stable_heartbeats": 2},
///     "iterations": 500,
///     "trace": "run.jsonl",
///     "out_dir": "results"
///   }
///
/// Every key is optional; unknown keys are rejected.
struct RunConfigFile {
  SimSetup setup;
  std::uint64_t iterations = 500;
  std::optional<std::string> trace_path;
  std::optional<std::string> out_dir;
  /// The parsed document, kept so callers can tell which keys were given.
  nlohmann::json raw = nlohmann::json::object();

  /// Value at a JSON pointer such as "/election/nodes", if the file set it.
  std::optional<nlohmann::json> given(const std::string& pointer) const;
};

/// Throws ConfigError on malformed JSON, unknown keys or invalid values.
RunConfigFile parse_run_config(std::string_view text);
RunConfigFile load_run_config(const std::string& path);

}  // namespace rwelect
