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

namespace rwelect {

// Closed forms for the launch condition: r consecutive Bernoulli(p) successes.
// All throw std::invalid_argument unless 0 < p < 1 and r >= 1.

/// p^r, the chance that r given draws all succeed.
double streak_probability(double p, std::uint32_t r);

/// Mean number of draws until the first run of r successes:
/// sum_{i=1..r} p^-i.
double expected_draws_to_streak(double p, std::uint32_t r);

/// Probability that a run of r successes completes within the first n draws.
/// Dynamic program over the current run length, O(n * r).
double prob_streak_within(double p, std::uint32_t r, std::uint64_t n);

}  // namespace rwelect
