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
#include <vector>

#include <json.hpp>

#include "rwelect/config.hpp"
#include "rwelect/setup.hpp"
#include "rwelect/types.hpp"

namespace rwelect {

inline constexpr Millis kHistogramBucketMs = 50;

struct HistogramBucket {
  Millis lo_ms = 0;
  Millis hi_ms = 0;
  std::uint64_t count = 0;

  bool operator==(const HistogramBucket&) const = default;
};

/// Aggregate over one campaign. Latency statistics cover elected runs only.
struct CampaignSummary {
  std::uint64_t iterations = 0;
  std::uint64_t elected = 0;
  std::uint64_t blocked = 0;
  std::uint64_t liveness_failures = 0;
  double mean_ms = 0.0;
  Millis min_ms = 0;
  Millis max_ms = 0;
  Millis p90_ms = 0;
  /// Share of elected runs where two or more nodes were candidates in the
  /// winning round.
  double split_vote_fraction = 0.0;
  /// Launch-time campaigns only: share of samples at or below 100 ms.
  std::optional<double> within_100ms_fraction;
  std::vector<HistogramBucket> histogram;

  bool operator==(const CampaignSummary&) const = default;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Seed of iteration i of a campaign: mix_seed(seed, i).
std::uint64_t iteration_seed(std::uint64_t seed, std::uint64_t iteration);

/// Latency statistics and 50 ms histogram over `samples`. Split-vote and
/// failure counts are left for the caller.
CampaignSummary summarize_latencies(std::vector<Millis> samples);

/// Time for a single node to meet the launch condition, once per
/// iteration: draws-until-streak * draw_period_ms.
std::vector<Millis> launch_time_samples(DrawValue threshold, std::uint32_t streak_len,
                                        Millis draw_period_ms, std::uint64_t iterations,
                                        std::uint64_t seed);

/// Summary of launch_time_samples. Requires at least 100 iterations.
CampaignSummary launch_time_campaign(DrawValue threshold, std::uint32_t streak_len,
                                     Millis draw_period_ms, std::uint64_t iterations,
                                     std::uint64_t seed);

struct BenchmarkSetup {
  ElectionConfig config = ElectionConfig::with_nodes(5);
  LatencyModel latency;
  std::vector<Fault> faults;
  StopRule stop;
  std::uint64_t iterations = 500;
  std::uint64_t seed = 0;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct BenchmarkResult {
  CampaignSummary summary;
  std::vector<RunStats> runs;
};

/// Setup of iteration i: the benchmark parameters with iteration_seed(seed, i).
SimSetup iteration_setup(const BenchmarkSetup& bench, std::uint64_t iteration);

/// Runs every iteration through the simulator and aggregates. Results do
/// not depend on the thread count.
BenchmarkResult election_benchmark(const BenchmarkSetup& bench);

std::string format_csv(const CampaignSummary& summary);
std::string format_histogram(const CampaignSummary& summary);
nlohmann::json summary_json(const CampaignSummary& summary);

/// Throw IoError naming `path` when it cannot be written.
void emit_csv(const CampaignSummary& summary, const std::string& path);
void emit_histogram(const CampaignSummary& summary, const std::string& path);
void emit_json(const CampaignSummary& summary, const std::string& path);

}  // namespace rwelect
