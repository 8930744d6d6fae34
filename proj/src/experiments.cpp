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

#include "rwelect/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <thread>

#include "rwelect/random.hpp"
#include "rwelect/sim.hpp"

namespace rwelect {
namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace

std::uint64_t iteration_seed(std::uint64_t seed, std::uint64_t iteration) {
  return mix_seed(seed, iteration);
}

CampaignSummary summarize_latencies(std::vector<Millis> samples) {
  CampaignSummary s;
  s.elected = samples.size();
  if (samples.empty()) return s;
  std::sort(samples.begin(), samples.end());
  const double sum = std::accumulate(samples.begin(), samples.end(), 0.0);
  s.mean_ms = sum / static_cast<double>(samples.size());
  s.min_ms = samples.front();
  s.max_ms = samples.back();
  // Nearest-rank percentile.
  const auto rank = static_cast<std::size_t>(
      std::ceil(0.9 * static_cast<double>(samples.size())));
  s.p90_ms = samples[std::max<std::size_t>(rank, 1) - 1];

  const Millis buckets = s.max_ms / kHistogramBucketMs + 1;
  s.histogram.reserve(static_cast<std::size_t>(buckets));
  for (Millis b = 0; b < buckets; ++b) {
    s.histogram.push_back({b * kHistogramBucketMs, (b + 1) * kHistogramBucketMs, 0});
  }
  for (Millis v : samples) {
    ++s.histogram[static_cast<std::size_t>(std::max<Millis>(v, 0) / kHistogramBucketMs)].count;
  }
  return s;
}

std::vector<Millis> launch_time_samples(DrawValue threshold, std::uint32_t streak_len,
                                        Millis draw_period_ms, std::uint64_t iterations,
                                        std::uint64_t seed) {
  if (streak_len == 0) throw ConfigError("streak length must be positive");
  if (draw_period_ms <= 0) throw ConfigError("draw period must be positive");
  std::vector<Millis> out;
  out.reserve(iterations);
  for (std::uint64_t i = 0; i < iterations; ++i) {
    SeededRng rng(iteration_seed(seed, i));
    std::uint32_t streak = 0;
    Millis draws = 0;
    while (streak < streak_len) {
      ++draws;
      streak = next_draw(rng) > threshold ? streak + 1 : 0;
    }
    out.push_back(draws * draw_period_ms);
  }
  return out;
}

CampaignSummary launch_time_campaign(DrawValue threshold, std::uint32_t streak_len,
                                     Millis draw_period_ms, std::uint64_t iterations,
                                     std::uint64_t seed) {
  if (iterations < 100) throw ConfigError("launch-time campaign needs at least 100 iterations");
  auto samples = launch_time_samples(threshold, streak_len, draw_period_ms, iterations, seed);
  const auto within = std::count_if(samples.begin(), samples.end(),
                                    [](Millis t) { return t <= 100; });
  CampaignSummary s = summarize_latencies(std::move(samples));
  s.iterations = iterations;
  s.within_100ms_fraction = static_cast<double>(within) / static_cast<double>(iterations);
  return s;
}

SimSetup iteration_setup(const BenchmarkSetup& bench, std::uint64_t iteration) {
  SimSetup setup;
  setup.config = bench.config;
  setup.latency = bench.latency;
  setup.faults = bench.faults;
  setup.stop = bench.stop;
  setup.seed = iteration_seed(bench.seed, iteration);
  return setup;
}

BenchmarkResult election_benchmark(const BenchmarkSetup& bench) {
  if (bench.iterations == 0) throw ConfigError("benchmark needs at least one iteration");
  iteration_setup(bench, 0).validate();

  BenchmarkResult result;
  result.runs.resize(bench.iterations);
  unsigned threads = bench.threads ? bench.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(
                                                 std::min<std::uint64_t>(bench.iterations, 64)));

  // Each worker owns a strided slice of iterations and writes only its own
  // slots, so the outcome is independent of scheduling.
  auto work = [&](unsigned worker) {
    for (std::uint64_t i = worker; i < bench.iterations; i += threads) {
      result.runs[i] = run(iteration_setup(bench, i), false).stats;
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }

  std::vector<Millis> latencies;
  std::uint64_t split = 0;
  std::uint64_t blocked = 0;
  std::uint64_t failures = 0;
  for (const auto& r : result.runs) {
    if (r.elected) {
      latencies.push_back(r.election_ms);
      if (r.candidates_seen >= 2) ++split;
    } else {
      ++failures;
      if (r.blocked) ++blocked;
    }
  }
  result.summary = summarize_latencies(std::move(latencies));
  result.summary.iterations = bench.iterations;
  result.summary.blocked = blocked;
  result.summary.liveness_failures = failures;
  result.summary.split_vote_fraction =
      result.summary.elected
          ? static_cast<double>(split) / static_cast<double>(result.summary.elected)
          : 0.0;
  return result;
}

std::string format_csv(const CampaignSummary& s) {
  std::string out = "bucket_lo_ms,bucket_hi_ms,count\n";
  for (const auto& b : s.histogram) {
    out += std::to_string(b.lo_ms) + ',' + std::to_string(b.hi_ms) + ',' +
           std::to_string(b.count) + '\n';
  }
  out += "\nstat,value\n";
  out += "iterations," + std::to_string(s.iterations) + '\n';
  out += "elected," + std::to_string(s.elected) + '\n';
  out += "blocked," + std::to_string(s.blocked) + '\n';
  out += "liveness_failures," + std::to_string(s.liveness_failures) + '\n';
  out += "mean_ms," + fixed6(s.mean_ms) + '\n';
  out += "min_ms," + std::to_string(s.min_ms) + '\n';
  out += "max_ms," + std::to_string(s.max_ms) + '\n';
  out += "p90_ms," + std::to_string(s.p90_ms) + '\n';
  out += "split_vote_fraction," + fixed6(s.split_vote_fraction) + '\n';
  if (s.within_100ms_fraction) {
    out += "within_100ms_fraction," + fixed6(*s.within_100ms_fraction) + '\n';
  }
  return out;
}

std::string format_histogram(const CampaignSummary& s) {
  constexpr std::uint64_t kWidth = 50;
  std::uint64_t peak = 0;
  for (const auto& b : s.histogram) peak = std::max(peak, b.count);
  std::string out;
  char line[64];
  for (const auto& b : s.histogram) {
    const auto bar = peak ? (b.count * kWidth + peak - 1) / peak : 0;
    std::snprintf(line, sizeof line, "%6lld-%-6lld ms |", static_cast<long long>(b.lo_ms),
                  static_cast<long long>(b.hi_ms));
    out += line;
    out += std::string(static_cast<std::size_t>(bar), '#');
    out += ' ' + std::to_string(b.count) + '\n';
  }
  out += "elected " + std::to_string(s.elected) + "/" + std::to_string(s.iterations) +
         "  mean " + fixed6(s.mean_ms) + " ms  min " + std::to_string(s.min_ms) + "  max " +
         std::to_string(s.max_ms) + "  p90 " + std::to_string(s.p90_ms) + "  split votes " +
         fixed6(s.split_vote_fraction) + '\n';
  return out;
}

nlohmann::json summary_json(const CampaignSummary& s) {
  nlohmann::json buckets = nlohmann::json::array();
  for (const auto& b : s.histogram) {
    buckets.push_back({{"lo_ms", b.lo_ms}, {"hi_ms", b.hi_ms}, {"count", b.count}});
  }
  nlohmann::json j{{"iterations", s.iterations},
                   {"elected", s.elected},
                   {"blocked", s.blocked},
                   {"liveness_failures", s.liveness_failures},
                   {"mean_ms", s.mean_ms},
                   {"min_ms", s.min_ms},
                   {"max_ms", s.max_ms},
                   {"p90_ms", s.p90_ms},
                   {"split_vote_fraction", s.split_vote_fraction},
                   {"histogram", std::move(buckets)}};
  if (s.within_100ms_fraction) j["within_100ms_fraction"] = *s.within_100ms_fraction;
  return j;
}

void emit_csv(const CampaignSummary& summary, const std::string& path) {
  write_file(path, format_csv(summary));
}

void emit_histogram(const CampaignSummary& summary, const std::string& path) {
  write_file(path, format_histogram(summary));
}

void emit_json(const CampaignSummary& summary, const std::string& path) {
  write_file(path, summary_json(summary).dump(2) + '\n');
}

}  // namespace rwelect
