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

"""Set-size estimation from subset queries and subset samples."""

from setsize._core import (
    Calibration,
    CellSummary,
    ConfigError,
    DomainShape,
    Error,
    Estimate,
    EstimateStatus,
    ExplicitSpec,
    FamilyViolation,
    HiddenSet,
    InstancePair,
    IntervalSpec,
    InvalidParams,
    InvalidSpec,
    IoError,
    OracleSession,
    RandomSubsetSpec,
    SubCubeSpec,
    SubGridSpec,
    SubsetFamily,
    TrialReport,
    WholeSpec,
    describe_spec,
    estimate,
    estimators,
    hard_instance,
    load_hidden_set,
    parse_family,
    parse_reports_csv,
    reports_csv,
    reports_json,
    run_trials,
    save_instance_pair,
    spec_allowed,
    spec_cardinality,
    summarize,
    summary_csv,
    summary_json,
    trial_seed,
    uniform_subset,
)

__version__ = "0.1.0"


def estimator_ids():
    return [e["id"] for e in estimators()]


def session(shape, elements, family=None, seed=0):
    """Oracle session over `elements` (1-based) with the given family."""
    if family is None:
        family = SubsetFamily.UNRESTRICTED
    elif isinstance(family, str):
        family = parse_family(family)
    return OracleSession(shape, HiddenSet(list(elements), shape.size), family, seed)
