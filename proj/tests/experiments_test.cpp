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


#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "rwelect/experiments.hpp"
#include "rwelect/probability.hpp"
#include "rwelect/sim.hpp"
#include "trace_checks.hpp"

namespace rwelect {
namespace {

namespace fs = std::filesystem;

const DrawValue kThreshold = DrawValue::parse("0.85");

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::uint64_t bucket_total(const CampaignSummary& s) {
  return std::accumulate(s.histogram.begin(), s.histogram.end(), std::uint64_t{0},
                         [](std::uint64_t acc, const HistogramBucket& b) { return acc + b.count; });
}

class ScratchDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rwelect-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST(LaunchTime, NeedsHundredIterations) {
  EXPECT_THROW(launch_time_campaign(kThreshold, 3, 1, 99, 1), ConfigError);
  EXPECT_NO_THROW(launch_time_campaign(kThreshold, 3, 1, 100, 1));
}

TEST(LaunchTime, DeterministicAndConserved) {
  const auto a = launch_time_campaign(kThreshold, 3, 1, 5000, 17);
  EXPECT_EQ(a, launch_time_campaign(kThreshold, 3, 1, 5000, 17));
  EXPECT_NE(a, launch_time_campaign(kThreshold, 3, 1, 5000, 18));
  EXPECT_EQ(bucket_total(a), a.elected);
  EXPECT_EQ(a.elected, 5000u);
  ASSERT_TRUE(a.within_100ms_fraction);
  EXPECT_LE(a.min_ms, a.mean_ms);
  EXPECT_LE(a.mean_ms, a.max_ms);
  EXPECT_GE(a.min_ms, 3);
}

TEST(LaunchTime, DrawPeriodScalesTimes) {
  const auto one = launch_time_samples(kThreshold, 3, 1, 200, 5);
  const auto two = launch_time_samples(kThreshold, 3, 2, 200, 5);
  for (std::size_t i = 0; i < one.size(); ++i) EXPECT_EQ(two[i], 2 * one[i]);
}

TEST(LaunchTime, MeanTracksClosedForm) {
  for (auto [t, p, r] : {std::tuple{"0.85", 0.15, 2u}, {"0.85", 0.15, 3u}, {"0.90", 0.10, 3u}}) {
    const auto s = launch_time_campaign(DrawValue::parse(t), r, 1, 100'000, 3);
    const double expected = expected_draws_to_streak(p, r);
    EXPECT_NEAR(s.mean_ms, expected, 0.02 * expected) << t << ' ' << r;
  }
}

TEST(Summaries, Percentiles) {
  const auto s = summarize_latencies({10, 20, 30, 40, 50, 60, 70, 80, 90, 100});
  EXPECT_EQ(s.min_ms, 10);
  EXPECT_EQ(s.max_ms, 100);
  EXPECT_EQ(s.p90_ms, 90);
  EXPECT_DOUBLE_EQ(s.mean_ms, 55.0);
  EXPECT_EQ(bucket_total(s), 10u);
  for (const auto& b : s.histogram) EXPECT_EQ(b.hi_ms - b.lo_ms, kHistogramBucketMs);
}

TEST(Benchmark, RejectsZeroIterations) {
  BenchmarkSetup b;
  b.iterations = 0;
  EXPECT_THROW(election_benchmark(b), ConfigError);
}

TEST(Benchmark, ThreadCountDoesNotMatter) {
  BenchmarkSetup b;
  b.iterations = 60;
  b.seed = 11;
  b.threads = 1;
  const auto one = election_benchmark(b);
  b.threads = 3;
  const auto three = election_benchmark(b);
  EXPECT_EQ(one.summary, three.summary);
  ASSERT_EQ(one.runs.size(), three.runs.size());
  for (std::size_t i = 0; i < one.runs.size(); ++i) {
    EXPECT_EQ(one.runs[i].election_ms, three.runs[i].election_ms);
  }
}

TEST(Benchmark, StatisticsAreConsistent) {
  BenchmarkSetup b;
  b.iterations = 120;
  b.seed = 4;
  const auto res = election_benchmark(b);
  const auto& s = res.summary;
  EXPECT_EQ(s.iterations, 120u);
  EXPECT_EQ(bucket_total(s), s.elected);
  EXPECT_LE(s.min_ms, s.mean_ms);
  EXPECT_LE(s.mean_ms, s.max_ms);
  EXPECT_GE(s.p90_ms, s.min_ms);
  EXPECT_LE(s.p90_ms, s.max_ms);
  EXPECT_GE(s.split_vote_fraction, 0.0);
  EXPECT_LE(s.split_vote_fraction, 1.0);

  // Split votes recounted from the traces of the same iterations.
  std::uint64_t split = 0;
  for (std::uint64_t i = 0; i < b.iterations; ++i) {
    const auto r = run(iteration_setup(b, i));
    EXPECT_EQ(r.stats.election_ms, res.runs[i].election_ms);
    if (checks::candidates_in_winning_round(r.trace).value_or(0) >= 2) ++split;
  }
  EXPECT_DOUBLE_EQ(s.split_vote_fraction,
                   static_cast<double>(split) / static_cast<double>(s.elected));
}

TEST(Benchmark, FailedRunsAreCountedSeparately) {
  BenchmarkSetup b;
  b.iterations = 5;
  b.stop.max_time_ms = 500;
  b.faults = {{0, FaultAction::Crash, 0}, {0, FaultAction::Crash, 1}, {0, FaultAction::Crash, 2}};
  const auto s = election_benchmark(b).summary;
  EXPECT_EQ(s.elected, 0u);
  EXPECT_EQ(s.blocked, 5u);
  EXPECT_EQ(s.liveness_failures, 5u);
  EXPECT_TRUE(s.histogram.empty());
}

TEST(Output, EmptyCampaignCsv) {
  const std::string csv = format_csv(summarize_latencies({}));
  EXPECT_EQ(csv,
            "bucket_lo_ms,bucket_hi_ms,count\n"
            "\n"
            "stat,value\n"
            "iterations,0\n"
            "elected,0\n"
            "blocked,0\n"
            "liveness_failures,0\n"
            "mean_ms,0.000000\n"
            "min_ms,0\n"
            "max_ms,0\n"
            "p90_ms,0\n"
            "split_vote_fraction,0.000000\n");
}

TEST_F(ScratchDir, ReEmissionIsByteIdentical) {
  BenchmarkSetup b;
  b.iterations = 30;
  const auto s = election_benchmark(b).summary;
  emit_csv(s, (dir_ / "a.csv").string());
  emit_csv(s, (dir_ / "b.csv").string());
  emit_histogram(s, (dir_ / "a.txt").string());
  emit_histogram(s, (dir_ / "b.txt").string());
  emit_json(s, (dir_ / "a.json").string());
  emit_json(s, (dir_ / "b.json").string());
  EXPECT_EQ(slurp(dir_ / "a.csv"), slurp(dir_ / "b.csv"));
  EXPECT_EQ(slurp(dir_ / "a.txt"), slurp(dir_ / "b.txt"));
  EXPECT_EQ(slurp(dir_ / "a.json"), slurp(dir_ / "b.json"));
  EXPECT_EQ(slurp(dir_ / "a.csv"), format_csv(s));
  const auto j = nlohmann::json::parse(slurp(dir_ / "a.json"));
  EXPECT_EQ(j.at("iterations"), 30);
}

TEST_F(ScratchDir, UnwritablePathNamesPath) {
  const std::string path = (dir_ / "missing" / "out.csv").string();
  try {
    emit_csv(summarize_latencies({}), path);
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find(path), std::string::npos);
  }
}

}  // namespace
}  // namespace rwelect
