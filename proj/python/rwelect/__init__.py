# Copyright 2026 The rwelect Authors
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Randomized roulette-wheel leader election.

Thin wrapper over the C++ core. Configurations are plain dicts in the same
shape as the run-configuration file accepted by the ``rwelect`` tool, e.g.
``{"election": {"nodes": 5, "optimized": True}, "seed": 42}``.
"""

import json

from . import _core
from ._core import (
    ConfigError,
    ReplayDivergence,
    ScriptError,
    TraceFormatError,
    expected_draws_to_streak,
    prob_streak_within,
    spin,
    streak_probability,
)

__all__ = [
    "ConfigError",
    "ReplayDivergence",
    "ScriptError",
    "TraceFormatError",
    "election_benchmark",
    "expected_draws_to_streak",
    "launch_time_campaign",
    "prob_streak_within",
    "replay",
    "run",
    "scenario",
    "spin",
    "streak_probability",
]


def _records(jsonl):
    return [json.loads(line) for line in jsonl.splitlines() if line]


class RunResult:
    """Trace and statistics of one simulation."""

    def __init__(self, trace_jsonl, stats_json):
        self.trace_jsonl = trace_jsonl
        self.stats = json.loads(stats_json)

    @property
    def header(self):
        return json.loads(self.trace_jsonl.split("\n", 1)[0])

    @property
    def records(self):
        return _records(self.trace_jsonl)[1:]

    def __repr__(self):
        s = self.stats
        return "RunResult(elected={}, leader={}, election_ms={})".format(
            s["elected"], s.get("leader"), s["election_ms"])


def run(config=None, keep_trace=True):
    return RunResult(*_core.run(json.dumps(config or {}), keep_trace))


def replay(trace_jsonl):
    """Re-runs a trace; raises ReplayDivergence at the first differing record."""
    return RunResult(*_core.replay(trace_jsonl))


def scenario(name):
    """Runs "case1" or "case2". Returns (result, failures, ladder)."""
    trace, stats, failures, ladder = _core.scenario(name)
    return RunResult(trace, stats), list(failures), ladder


def launch_time_campaign(threshold=0.85, streak_len=3, draw_period_ms=1,
                         iterations=1000, seed=0):
    return json.loads(_core.launch_time_campaign(
        threshold, streak_len, draw_period_ms, iterations, seed))


def election_benchmark(config=None, iterations=500, threads=0):
    return json.loads(_core.election_benchmark(json.dumps(config or {}), iterations, threads))
