# Copyright 2026 The pamon Authors.
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

import os
from pathlib import Path

import pytest

import pamon

DATA = Path(os.environ.get("PAMON_DATA_DIR", Path(__file__).resolve().parents[2] / "data")) / "jobhunting"


def test_formulas():
    assert pamon.parse("a  &  X b") == "a & X b"
    assert pamon.evaluate("interview", [{"interview"}])
    assert not pamon.evaluate("X a", [{"a"}])
    assert not pamon.evaluate("a", [])
    with pytest.raises(pamon.PamonError):
        pamon.parse("a U")


def test_sub_purpose():
    assert pamon.sub_purpose("b", "a & F b")
    assert not pamon.sub_purpose("c", "a & F b")


def test_golden_run():
    policy = pamon.Policy.load(str(DATA / "jobhunting.facts"))
    assert "bob" in policy.subjects
    m = pamon.Monitor(policy, "jobHunting")
    verdicts = []
    for r in pamon.read_trace(str(DATA / "golden.trace")):
        decision, verdict, coarse = m.step(r)
        assert decision == "GRANT"
        assert not coarse
        verdicts.append(verdict)
    assert verdicts[1] == "temp_false"
    assert verdicts[-1] == "temp_true"
    m.close()
    assert m.frozen
    assert len(m.trace) == 6


def test_only_bob():
    policy = pamon.Policy.load(str(DATA / "onlybob.facts"))
    m = pamon.Monitor(policy, "jobHunting")
    assert m.step(("wid", "bob", "interview", "sam", "jobHunting")) == ("DENY", "false", False)
    assert m.trace == []
    assert not pamon.achievable(policy, "jobHunting")["achievable"]


def test_achievable_and_dot():
    policy = pamon.Policy.load(str(DATA / "jobhunting.facts"))
    r = pamon.achievable(policy, "jobHunting", "w1")
    assert r["achievable"]
    assert all(req[0] == "w1" for req in r["witness"])
    assert pamon.to_dot(policy, "jobHunting").startswith("// purpose jobHunting (pre)")
    with pytest.raises(ValueError):
        pamon.to_dot(policy, "jobHunting", "late")
