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

#include <string>
#include <vector>

#include "rwelect/setup.hpp"
#include "rwelect/sim.hpp"

namespace rwelect {

// Scripted five-node runs reproducing the two worked examples: a single
// candidate (case 1) and two near-simultaneous candidates (case 2). Nodes
// A..E are ids 0..4.

SimSetup scenario_case1_setup();
SimSetup scenario_case2_setup();

RunResult run_scenario_case1();
RunResult run_scenario_case2();

/// Postconditions that failed; empty when the run matches the example.
std::vector<std::string> check_scenario_case1(const RunResult& result);
std::vector<std::string> check_scenario_case2(const RunResult& result);

/// Human-readable message ladder: one line per send, state change and
/// election record.
std::string message_ladder(const Trace& trace);

}  // namespace rwelect
