# Copyright 2026 The setsize Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import os
import pathlib
import subprocess

import jsonschema
import pytest

import setsize

ROOT = pathlib.Path(os.environ.get("SETSIZE_SOURCE_DIR",
                                   pathlib.Path(__file__).resolve().parents[2]))
CLI = os.environ.get("SETSIZE_CLI")


def load_schema(name):
    return json.loads((ROOT / "schemas" / name).read_text())


def test_estimator_ids():
    ids = setsize.estimator_ids()
    assert len(ids) == len(set(ids))
    for expected in ("collision", "exact_recover", "interval_sample_adaptive",
                     "grid_sample_adaptive", "cube_sample_adaptive",
                     "unrestricted_adaptive"):
        assert expected in ids


def test_session_query_and_sample():
    s = setsize.session(setsize.DomainShape.line(10), [2, 5, 7], "intervals", seed=1)
    assert s.query(setsize.IntervalSpec(1, 4))
    assert not s.query(setsize.IntervalSpec(8, 10))
    assert s.sample(setsize.IntervalSpec(3, 6)) == 5
    assert s.sample(setsize.IntervalSpec(8, 10)) is None
    assert s.intersection_size(setsize.WholeSpec()) == 3
    assert (s.queries, s.samples) == (2, 2)
    with pytest.raises(setsize.FamilyViolation):
        s.query(setsize.ExplicitSpec([1, 3], 10))
    with pytest.raises(setsize.InvalidSpec):
        s.query(setsize.IntervalSpec(4, 11))


def test_exact_recovery():
    elements = setsize.uniform_subset(4096, 37, 5)
    s = setsize.session(setsize.DomainShape.line(4096), elements, "intervals")
    e = setsize.estimate("exact_recover", s, 1.0)
    assert e.ok
    assert e.value == 37
    assert e.recovered == elements


def test_estimators_on_their_shapes():
    cases = [
        ("collision", setsize.DomainShape.line(1 << 16), "universe"),
        ("interval_sample_adaptive", setsize.DomainShape.line(1 << 16), "intervals"),
        ("grid_sample_adaptive", setsize.DomainShape.grid([256, 256]), "subgrids"),
        ("cube_sample_adaptive", setsize.DomainShape.hypercube(16), "subcubes"),
        ("unrestricted_adaptive", setsize.DomainShape.line(1 << 16), "unrestricted"),
    ]
    for estimator, shape, family in cases:
        hits = 0
        for seed in range(30):
            elements = setsize.uniform_subset(shape.size, 300, seed)
            s = setsize.session(shape, elements, family, seed=seed)
            e = setsize.estimate(estimator, s, 1.0, seed=seed)
            hits += e.ok and 150 <= e.value <= 600
        assert hits >= 20, estimator


def test_incompatible_estimator():
    s = setsize.session(setsize.DomainShape.line(64), [1], "intervals")
    with pytest.raises(setsize.ConfigError):
        setsize.estimate("cube_sample_adaptive", s, 1.0)


def test_run_trials_json_matches_schemas():
    reports = setsize.run_trials("interval_query_adaptive",
                                 setsize.DomainShape.line(256), [0, 5, 40],
                                 [0.5, 1.0], trials=3, seed=42, threads=2)
    assert len(reports) == 18
    cells = setsize.summarize(reports)
    assert len(cells) == 6
    jsonschema.validate(json.loads(setsize.reports_json(reports)),
                        load_schema("reports.schema.json"))
    jsonschema.validate(json.loads(setsize.summary_json(cells)),
                        load_schema("summary.schema.json"))
    assert setsize.parse_reports_csv(setsize.reports_csv(reports)) == reports


def test_golden_reports():
    reports = setsize.run_trials("interval_query_adaptive",
                                 setsize.DomainShape.line(256), [0, 1, 5, 40],
                                 [0.5, 1.0], trials=3, seed=42)
    golden = (ROOT / "tests" / "fixtures" / "golden_reports.csv").read_text()
    assert setsize.reports_csv(reports) == golden


def test_bad_config():
    with pytest.raises(setsize.ConfigError):
        setsize.run_trials("collision", setsize.DomainShape.line(10), [20])
    with pytest.raises(setsize.ConfigError):
        setsize.run_trials("nope", setsize.DomainShape.line(10), [2])


def test_hard_instance_pair():
    pair = setsize.hard_instance("collision", 1 << 12, 64, seed=3)
    assert len(pair.s1) < len(pair.s2)
    again = setsize.hard_instance("collision", 1 << 12, 64, seed=3)
    assert pair.s1.elements == again.s1.elements


@pytest.mark.skipif(CLI is None, reason="command-line tool not configured")
def test_cli_json_output_matches_schemas(tmp_path):
    subprocess.run([CLI, "bench", "--estimator", "unrestricted_adaptive",
                    "--n", "4096", "--w", "1,64", "--eps", "0.5,1",
                    "--trials", "4", "--timing", "--format", "json",
                    "--out", str(tmp_path)], check=True)
    jsonschema.validate(json.loads((tmp_path / "reports.json").read_text()),
                        load_schema("reports.schema.json"))
    jsonschema.validate(json.loads((tmp_path / "summary.json").read_text()),
                        load_schema("summary.schema.json"))
