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


// Python extension module rwelect._core. Structured values cross the
// boundary as JSON text; the Python package turns them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "rwelect/experiments.hpp"
#include "rwelect/json_io.hpp"
#include "rwelect/probability.hpp"
#include "rwelect/random.hpp"
#include "rwelect/run_config.hpp"
#include "rwelect/scenarios.hpp"
#include "rwelect/sim.hpp"

namespace py = pybind11;
using namespace rwelect;

namespace {

std::pair<std::string, std::string> result_pair(const RunResult& r) {
  const nlohmann::json stats = r.stats;
  return {to_jsonl(r.trace), stats.dump()};
}

SimSetup setup_from(const std::string& config_json) {
  return parse_run_config(config_json).setup;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Randomized roulette-wheel leader election: protocol simulator and analysis";

  static py::exception<ReplayDivergence> divergence(m, "ReplayDivergence", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<TraceFormatError>(m, "TraceFormatError", PyExc_ValueError);
  py::register_exception<ScriptError>(m, "ScriptError", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ReplayDivergence& e) {
      py::object err = py::handle(divergence.ptr())(py::str(e.what()));
      err.attr("record") = e.record();
      err.attr("expected") = e.expected();
      err.attr("actual") = e.actual();
      PyErr_SetObject(divergence.ptr(), err.ptr());
    }
  });

  m.def("streak_probability", &streak_probability, py::arg("p"), py::arg("r"));
  m.def("expected_draws_to_streak", &expected_draws_to_streak, py::arg("p"), py::arg("r"));
  m.def("prob_streak_within", &prob_streak_within, py::arg("p"), py::arg("r"), py::arg("n"));

  m.def(
      "spin",
      [](const std::vector<std::pair<NodeId, double>>& entries, std::uint64_t word) {
        Wheel w;
        for (const auto& [node, value] : entries) w.add(node, DrawValue::from_double(value));
        return w.spin(word);
      },
      py::arg("entries"), py::arg("word"));

  m.def(
      "run",
      [](const std::string& config_json, bool keep_trace) {
        const SimSetup setup = setup_from(config_json);
        py::gil_scoped_release release;
        return result_pair(run(setup, keep_trace));
      },
      py::arg("config_json"), py::arg("keep_trace") = true,
      "Run one simulation; returns (trace_jsonl, stats_json).");

  m.def(
      "replay",
      [](const std::string& jsonl) { return result_pair(replay(jsonl)); }, py::arg("jsonl"));

  m.def(
      "scenario",
      [](const std::string& name) {
        if (name != "case1" && name != "case2") throw ConfigError("unknown scenario: " + name);
        const RunResult r = name == "case1" ? run_scenario_case1() : run_scenario_case2();
        auto failures = name == "case1" ? check_scenario_case1(r) : check_scenario_case2(r);
        auto [trace, stats] = result_pair(r);
        return py::make_tuple(trace, stats, failures, message_ladder(r.trace));
      },
      py::arg("name"));

  m.def(
      "launch_time_campaign",
      [](double threshold, std::uint32_t streak_len, Millis draw_period_ms,
         std::uint64_t iterations, std::uint64_t seed) {
        return summary_json(launch_time_campaign(DrawValue::from_double(threshold), streak_len,
                                                 draw_period_ms, iterations, seed))
            .dump();
      },
      py::arg("threshold"), py::arg("streak_len"), py::arg("draw_period_ms"),
      py::arg("iterations"), py::arg("seed"));

  m.def(
      "election_benchmark",
      [](const std::string& config_json, std::uint64_t iterations, unsigned threads) {
        const SimSetup s = setup_from(config_json);
        BenchmarkSetup b;
        b.config = s.config;
        b.latency = s.latency;
        b.faults = s.faults;
        b.stop = s.stop;
        b.seed = s.seed;
        b.iterations = iterations;
        b.threads = threads;
        py::gil_scoped_release release;
        return summary_json(election_benchmark(b).summary).dump();
      },
      py::arg("config_json"), py::arg("iterations"), py::arg("threads") = 0);
}
