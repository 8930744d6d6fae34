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

#include <string_view>

#include "rwelect/setup.hpp"
#include "rwelect/trace.hpp"

namespace rwelect {

struct RunResult {
  Trace trace;
  RunStats stats;
};

/// Executes one simulation. The trace is a pure function of `setup`.
/// With `keep_trace` false only statistics are collected.
RunResult run(const SimSetup& setup, bool keep_trace = true);

/// Re-runs the setup in the first line of `jsonl` and compares every record
/// line byte for byte. Returns the fresh result; throws ReplayDivergence at
/// the first mismatch (missing or extra records included).
RunResult replay(std::string_view jsonl);

}  // namespace rwelect
