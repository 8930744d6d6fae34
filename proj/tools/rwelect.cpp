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

// rwelect: command-line front end for the election simulator.
//
// Exit codes: 0 success, 1 runtime or liveness failure, 2 usage error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rwelect/experiments.hpp"
#include "rwelect/json_io.hpp"
#include "rwelect/probability.hpp"
#include "rwelect/run_config.hpp"
#include "rwelect/scenarios.hpp"
#include "rwelect/sim.hpp"

namespace {

using namespace rwelect;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string default_out_dir() {
  if (const char* env = std::getenv("RWELECT_OUT_DIR"); env && *env) return env;
  return ".";
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
}

std::pair<std::uint64_t, std::uint64_t> split_pair(const std::string& text, const char* what) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw UsageError(std::string("expected A:B for ") + what + ", got '" + text + "'");
  }
  try {
    std::size_t used = 0;
    const auto a = std::stoull(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument(text);
    const auto rest = text.substr(colon + 1);
    const auto b = std::stoull(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(text);
    return {a, b};
  } catch (const std::logic_error&) {
    throw UsageError(std::string("expected two integers A:B for ") + what + ", got '" + text +
                     "'");
  }
}

DrawValue parse_threshold(double t) {
  if (!(t > 0.0 && t < 1.0)) throw UsageError("threshold must lie strictly between 0 and 1");
  return DrawValue::from_double(t);
}

// Flags shared by elect and bench. Each one, when given, must agree with
// the corresponding key of a --config file.
struct SetupFlags {
  std::string config_path;
  std::size_t nodes = 0;
  std::uint64_t seed = 0;
  double threshold = 0.0;
  std::uint32_t streak = 0;
  bool optimized = false;
  std::string latency;
  std::vector<std::string> crashes;
  std::vector<std::string> recoveries;
  Millis max_time = 0;

  CLI::Option* o_nodes = nullptr;
  CLI::Option* o_seed = nullptr;
  CLI::Option* o_threshold = nullptr;
  CLI::Option* o_streak = nullptr;
  CLI::Option* o_optimized = nullptr;
  CLI::Option* o_latency = nullptr;
  CLI::Option* o_crash = nullptr;
  CLI::Option* o_recover = nullptr;
  CLI::Option* o_max_time = nullptr;

  void add_to(CLI::App& app) {
    app.add_option("--config", config_path, "JSON run-configuration file")
        ->check(CLI::ExistingFile);
    o_nodes = app.add_option("--nodes", nodes, "Cluster size (>= 3)");
    o_seed = app.add_option("--seed", seed, "Run seed");
    o_threshold = app.add_option("--threshold", threshold, "Launch threshold in (0, 1)");
    o_streak = app.add_option("--streak", streak, "Consecutive draws above threshold");
    o_optimized = app.add_flag("--optimized", optimized, "Promote on the first majority");
    o_latency = app.add_option("--latency", latency, "Uniform message latency lo:hi in ms");
    o_crash = app.add_option("--crash", crashes, "Crash node:at_ms (repeatable)");
    o_recover = app.add_option("--recover", recoveries, "Recover node:at_ms (repeatable)");
    o_max_time = app.add_option("--max-time", max_time, "Virtual time budget in ms");
  }

  template <typename T>
  static void check_conflict(const RunConfigFile& file, const char* pointer, const char* flag,
                             const T& flag_value) {
    if (auto v = file.given(pointer)) {
      T file_value;
      try {
        file_value = v->template get<T>();
      } catch (const json::exception&) {
        throw UsageError(std::string(flag) + " conflicts with config key " + pointer);
      }
      if (!(file_value == flag_value)) {
        throw UsageError(std::string(flag) + " conflicts with config key " + pointer);
      }
    }
  }

  RunConfigFile resolve() const {
    RunConfigFile file;
    if (!config_path.empty()) {
      try {
        file = load_run_config(config_path);
      } catch (const ConfigError& e) {
        throw UsageError(e.what());
      }
    }
    auto& s = file.setup;
    if (*o_nodes) {
      check_conflict(file, "/election/nodes", "--nodes", nodes);
      ElectionConfig resized = ElectionConfig::with_nodes(nodes);
      auto keep = s.config;
      keep.membership = resized.membership;
      s.config = keep;
    }
    if (*o_seed) {
      check_conflict(file, "/seed", "--seed", seed);
      s.seed = seed;
    }
    if (*o_threshold) {
      const DrawValue t = parse_threshold(threshold);
      if (auto v = file.given("/election/threshold")) {
        if (v->get<DrawValue>() != t) {
          throw UsageError("--threshold conflicts with config key /election/threshold");
        }
      }
      s.config.threshold = t;
    }
    if (*o_streak) {
      check_conflict(file, "/election/streak_len", "--streak", streak);
      s.config.streak_len = streak;
    }
    if (*o_optimized) {
      check_conflict(file, "/election/optimized", "--optimized", true);
      s.config.optimized = true;
    }
    if (*o_latency) {
      const auto [lo, hi] = split_pair(latency, "--latency");
      const auto model = LatencyModel::uniform(static_cast<Millis>(lo), static_cast<Millis>(hi));
      if (auto v = file.given("/latency"); v && v->get<LatencyModel>() != model) {
        throw UsageError("--latency conflicts with config key /latency");
      }
      s.latency = model;
    }
    if (*o_crash || *o_recover) {
      std::vector<Fault> faults;
      for (const auto& c : crashes) {
        const auto [node, at] = split_pair(c, "--crash");
        faults.push_back({static_cast<Millis>(at), FaultAction::Crash, static_cast<NodeId>(node)});
      }
      for (const auto& r : recoveries) {
        const auto [node, at] = split_pair(r, "--recover");
        faults.push_back(
            {static_cast<Millis>(at), FaultAction::Recover, static_cast<NodeId>(node)});
      }
      if (auto v = file.given("/faults"); v && v->get<std::vector<Fault>>() != faults) {
        throw UsageError("--crash/--recover conflict with config key /faults");
      }
      s.faults = std::move(faults);
    }
    if (*o_max_time) {
      check_conflict(file, "/stop/max_time_ms", "--max-time", max_time);
      s.stop.max_time_ms = max_time;
    }
    try {
      s.validate();
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
    return file;
  }
};

std::string messages_line(const RunStats& stats) {
  std::string out;
  for (std::size_t i = 0; i < kMessageKindCount; ++i) {
    if (i) out += ' ';
    out += std::string(to_string(static_cast<MessageKind>(i))) + '=' +
           std::to_string(stats.messages_by_kind[i]);
  }
  return out;
}

int cmd_scenario(const std::string& name, const std::string& trace_path) {
  const RunResult result = name == "case1" ? run_scenario_case1() : run_scenario_case2();
  const auto failures =
      name == "case1" ? check_scenario_case1(result) : check_scenario_case2(result);

  std::cout << "scenario " << name << " (5 nodes A..E)\n" << message_ladder(result.trace);
  std::cout << "messages before heartbeats: " << result.stats.non_heartbeat_messages() << '\n';
  if (result.stats.leader) std::cout << "leader: " << node_label(*result.stats.leader) << '\n';

  const std::string path =
      trace_path.empty() ? join_path(default_out_dir(), "scenario-" + name + ".jsonl")
                         : trace_path;
  write_trace(result.trace, path);
  std::cout << "trace: " << path << '\n';

  if (!failures.empty()) {
    for (const auto& f : failures) std::cout << "FAILED: " << f << '\n';
    return kFailure;
  }
  std::cout << "postconditions: ok\n";
  return kOk;
}

int cmd_elect(const SetupFlags& flags, const std::string& trace_flag) {
  const RunConfigFile file = flags.resolve();
  const RunResult result = run(file.setup);
  const auto& st = result.stats;

  std::string trace_path = trace_flag;
  if (trace_path.empty() && file.trace_path) trace_path = *file.trace_path;
  if (!trace_path.empty()) {
    write_trace(result.trace, trace_path);
    std::cout << "trace: " << trace_path << '\n';
  }

  std::cout << "nodes: " << file.setup.config.size() << "  majority: "
            << file.setup.config.majority() << "  seed: " << file.setup.seed
            << (file.setup.config.optimized ? "  mode: optimized" : "  mode: unoptimized")
            << '\n';
  std::cout << "messages: " << messages_line(st) << '\n';
  if (!st.elected) {
    if (st.blocked) {
      std::cout << "blocked: fewer than a majority of nodes are up; no leader after "
                << st.end_ms << " ms\n";
    } else {
      std::cout << "liveness failure: no stable leader within " << st.end_ms << " ms\n";
    }
    return kFailure;
  }
  std::cout << "leader: " << node_label(*st.leader) << " (node " << *st.leader << ")\n"
            << "round: " << st.leader_round << '\n'
            << "election_ms: " << st.election_ms << '\n'
            << "candidates: " << st.candidates_seen << '\n';
  if (st.safety_violation) {
    std::cout << "SAFETY VIOLATION: two leaders in one round\n";
    return kFailure;
  }
  return kOk;
}

void print_summary(const std::string& label, const CampaignSummary& s) {
  std::printf("%s: elected %llu/%llu  mean %.3f ms  min %lld  max %lld  p90 %lld  "
              "split votes %.4f\n",
              label.c_str(), static_cast<unsigned long long>(s.elected),
              static_cast<unsigned long long>(s.iterations), s.mean_ms,
              static_cast<long long>(s.min_ms), static_cast<long long>(s.max_ms),
              static_cast<long long>(s.p90_ms), s.split_vote_fraction);
}

int cmd_bench(const SetupFlags& flags, CLI::Option* o_iterations, std::uint64_t iterations,
              std::string out_dir, unsigned threads, bool paired) {
  const RunConfigFile file = flags.resolve();
  if (*o_iterations) {
    SetupFlags::check_conflict(file, "/iterations", "--iterations", iterations);
  } else {
    iterations = file.iterations;
  }
  if (iterations == 0) throw UsageError("--iterations must be at least 1");
  if (out_dir.empty()) out_dir = file.out_dir.value_or(default_out_dir());
  ensure_dir(out_dir);

  BenchmarkSetup bench;
  bench.config = file.setup.config;
  bench.latency = file.setup.latency;
  bench.faults = file.setup.faults;
  bench.stop = file.setup.stop;
  bench.iterations = iterations;
  bench.seed = file.setup.seed;
  bench.threads = threads;

  auto emit = [&](const std::string& stem, const CampaignSummary& s) {
    emit_csv(s, join_path(out_dir, stem + ".csv"));
    emit_json(s, join_path(out_dir, stem + ".json"));
    emit_histogram(s, join_path(out_dir, stem + "_histogram.txt"));
    print_summary(stem, s);
    if (s.liveness_failures) {
      std::printf("%s: %llu runs without a leader (%llu blocked)\n", stem.c_str(),
                  static_cast<unsigned long long>(s.liveness_failures),
                  static_cast<unsigned long long>(s.blocked));
    }
  };

  if (!paired) {
    const auto result = election_benchmark(bench);
    emit("bench", result.summary);
    std::cout << format_histogram(result.summary);
    return kOk;
  }
  bench.config.optimized = false;
  const auto plain = election_benchmark(bench);
  bench.config.optimized = true;
  const auto fast = election_benchmark(bench);
  emit("bench_unoptimized", plain.summary);
  emit("bench_optimized", fast.summary);
  std::printf("paired seeds: optimized mean %.3f ms %s unoptimized mean %.3f ms\n",
              fast.summary.mean_ms, fast.summary.mean_ms <= plain.summary.mean_ms ? "<=" : ">",
              plain.summary.mean_ms);
  return kOk;
}

int cmd_analyze(double threshold, std::uint32_t streak, std::uint64_t draws) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw UsageError("--threshold must lie strictly between 0 and 1");
  }
  if (streak == 0) throw UsageError("--streak must be at least 1");
  const double p = 1.0 - threshold;
  std::printf("threshold                 %.6f\n", threshold);
  std::printf("p (draw above threshold)  %.6f\n", p);
  std::printf("streak                    %u\n", streak);
  std::printf("streak_probability        %.12g\n", streak_probability(p, streak));
  std::printf("expected_draws_to_streak  %.6f\n", expected_draws_to_streak(p, streak));
  std::printf("prob_streak_within(%llu)  %.12g\n", static_cast<unsigned long long>(draws),
              prob_streak_within(p, streak, draws));
  return kOk;
}

int cmd_replay(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot read trace: " << path << '\n';
    return kFailure;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    const auto result = replay(buf.str());
    std::cout << "replay identical: " << result.trace.records.size() << " records\n";
    return kOk;
  } catch (const ReplayDivergence& e) {
    std::cout << "replay diverged at record " << e.record() << "\n  recorded: " << e.expected()
              << "\n  replayed: " << e.actual() << '\n';
    return kFailure;
  } catch (const TraceFormatError& e) {
    std::cout << "replay diverged at record 1: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized roulette-wheel leader election simulator"};
  app.require_subcommand(1);

  std::string scenario_name;
  std::string scenario_trace;
  auto* scenario = app.add_subcommand("scenario", "Run a scripted five-node case study");
  scenario->add_option("name", scenario_name, "case1 | case2")
      ->required()
      ->check(CLI::IsMember({"case1", "case2"}));
  scenario->add_option("--trace", scenario_trace, "Trace output path");

  SetupFlags elect_flags;
  std::string elect_trace;
  auto* elect = app.add_subcommand("elect", "Run one seeded election");
  elect_flags.add_to(*elect);
  elect->add_option("--trace", elect_trace, "Write the JSON-lines trace here");

  SetupFlags bench_flags;
  std::uint64_t iterations = 500;
  std::string out_dir;
  unsigned threads = 0;
  bool paired = false;
  auto* bench = app.add_subcommand("bench", "Run an election benchmark campaign");
  bench_flags.add_to(*bench);
  auto* o_iterations = bench->add_option("--iterations", iterations, "Number of runs");
  bench->add_option("--out", out_dir, "Output directory (default $RWELECT_OUT_DIR or .)");
  bench->add_option("--threads", threads, "Worker threads (0 = all cores)");
  bench->add_flag("--paired", paired, "Run unoptimized and optimized on the same seeds");

  double threshold = 0.85;
  std::uint32_t streak = 3;
  std::uint64_t draws = 100;
  auto* analyze = app.add_subcommand("analyze", "Closed-form launch-condition probabilities");
  analyze->add_option("--threshold", threshold, "Launch threshold in (0, 1)");
  analyze->add_option("--streak", streak, "Consecutive draws required");
  analyze->add_option("--draws", draws, "Draw budget for the within-n probability");

  std::string replay_path;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run a trace and compare byte for byte");
  replay_cmd->add_option("trace", replay_path, "Trace file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (*scenario) return cmd_scenario(scenario_name, scenario_trace);
    if (*elect) return cmd_elect(elect_flags, elect_trace);
    if (*bench) return cmd_bench(bench_flags, o_iterations, iterations, out_dir, threads, paired);
    if (*analyze) return cmd_analyze(threshold, streak, draws);
    if (*replay_cmd) return cmd_replay(replay_path);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
