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


import pytest

import rwelect


def test_probabilities():
    assert rwelect.streak_probability(0.15, 3) == pytest.approx(0.003375, abs=1e-12)
    assert rwelect.expected_draws_to_streak(0.10, 3) == pytest.approx(1110.0)
    assert rwelect.prob_streak_within(0.15, 3, 3) == pytest.approx(0.003375, abs=1e-12)
    with pytest.raises(ValueError):
        rwelect.streak_probability(1.5, 3)


def test_run_and_replay():
    r = rwelect.run({"seed": 42})
    assert r.stats["elected"]
    assert r.header["format"] == "rwelect-trace"
    assert r.header["setup"]["seed"] == 42
    assert any(rec["event"] == "elected" for rec in r.records)
    again = rwelect.replay(r.trace_jsonl)
    assert again.trace_jsonl == r.trace_jsonl


def test_replay_divergence():
    r = rwelect.run({"seed": 42})
    bad = r.trace_jsonl.replace('"seed":42', '"seed":43', 1)
    with pytest.raises(rwelect.ReplayDivergence) as info:
        rwelect.replay(bad)
    assert info.value.record == 1


def test_blocked():
    r = rwelect.run({"seed": 1, "stop": {"max_time_ms": 1000},
                     "faults": [{"at": 0, "action": "crash", "node": n} for n in range(3)]},
                    keep_trace=False)
    assert not r.stats["elected"]
    assert r.stats["blocked"]


def test_bad_config():
    with pytest.raises(rwelect.ConfigError):
        rwelect.run({"election": {"nodes": 2}})
    with pytest.raises(rwelect.ConfigError):
        rwelect.run({"unknown": 1})


def test_scenarios():
    result, failures, ladder = rwelect.scenario("case1")
    assert failures == []
    assert "Proposal" in ladder
    counts = result.stats["messages_by_kind"]
    assert sum(v for k, v in counts.items() if k != "Heartbeat") == 9
    result, failures, _ = rwelect.scenario("case2")
    assert failures == []
    with pytest.raises(ValueError):
        rwelect.scenario("case3")


def test_campaigns():
    s = rwelect.launch_time_campaign(iterations=2000, seed=3)
    assert s["iterations"] == 2000
    assert 0 < s["within_100ms_fraction"] < 1
    b = rwelect.election_benchmark({"seed": 7}, iterations=40)
    assert b["elected"] == 40
    assert sum(bucket["count"] for bucket in b["histogram"]) == 40


def test_spin():
    assert rwelect.spin([(2, 0.87)], 123456789) == 2
    entries = [(0, 0.9), (1, 0.86), (2, 0.88), (3, 0.92), (4, 0.87)]
    assert rwelect.spin(entries, 1 << 63) == 2
