"""Tests for certificate assembly, serialization, and determinism."""

from __future__ import annotations

import json
from fractions import Fraction

import pytest

from sasano_galois.algnum import AlgNum, canonical_constants
from sasano_galois.report import (
    SECTION_ORDER,
    STATUSES,
    build_orbit_report,
    build_proof,
    build_seed_report,
    format_numeric,
    orbit_jsonl,
    orbit_section,
    report_to_json,
    report_to_markdown,
)
from sasano_galois.weyl import (
    MatsudaResult,
    OrbitNode,
    OrbitResult,
    WeylError,
    enumerate_orbit,
    seed_state,
)


@pytest.fixture(scope="module")
def proof():
    return build_proof(orbit_depth=2)


@pytest.fixture(scope="module")
def wasow_proof():
    return build_proof(wasow=True, orbit_depth=1)


def test_section_order_and_statuses(proof):
    assert tuple(s.name for s in proof.sections) == SECTION_ORDER
    assert all(s.status in STATUSES for s in proof.sections)
    assert proof.all_pass()
    assert proof.verdict == "NotIntegrable"
    assert proof.normalization == "canonical"


def test_verdict_requires_full_pipeline():
    partial = build_proof(stop_after="classify")
    assert partial.verdict is None
    assert "final verdict" not in [s.name for s in partial.sections]


@pytest.mark.parametrize(
    "stop, last",
    [
        ("nve", "normal variational equations"),
        ("reduction", "reduction trace"),
        ("classify", "galois components"),
    ],
)
def test_stop_after_truncates(stop, last):
    report = build_proof(stop_after=stop)
    names = [s.name for s in report.sections]
    assert names == list(SECTION_ORDER[: len(names)])
    assert names[-1] == last


def test_reports_are_deterministic(proof):
    again = build_proof(orbit_depth=2)
    assert report_to_json(proof) == report_to_json(again)
    assert report_to_markdown(proof) == report_to_markdown(again)


def test_exact_value_payloads(proof):
    wh = proof.section("whittaker normal form")
    for step in wh.steps:
        values = dict(step.values)
        assert values["kappa"]["exact"] == "1/2"
        assert values["kappa"]["numeric"] == "0.5"
        assert values["mu"]["exact"] == "1/6"
        assert values["mu"]["numeric"] == "0.16666666666666666667"
        assert "coords" in values["scale"]


def test_json_round_trips(proof):
    data = json.loads(report_to_json(proof))
    assert data["verdict"] == "NotIntegrable"
    assert [s["name"] for s in data["sections"]] == list(SECTION_ORDER)
    assert [lv["name"] for lv in data["tower"]["levels"]] == ["g", "i", "b"]
    eig = data["sections"][2]["steps"][-2]["values"]
    assert eig["characteristic polynomial"] == "l^4 - 5*l^2 - 5"


def test_markdown_rendering(proof):
    md = report_to_markdown(proof)
    assert "- verdict: **NotIntegrable**" in md
    assert "## stokes flags [pass]" in md
    assert "- kappa: `1/2`  (= 0.5)" in md
    headers = [line for line in md.splitlines() if line.startswith("## ")]
    assert len(headers) == len(SECTION_ORDER)


def test_wasow_proof(wasow_proof):
    assert wasow_proof.verdict == "NotIntegrable"
    assert wasow_proof.normalization == "wasow"
    assert wasow_proof.all_pass()


def test_format_numeric():
    cc = canonical_constants()
    tower = cc.tower
    half = AlgNum.from_rational(tower, Fraction(1, 2))
    assert format_numeric(half) == "0.5"
    assert format_numeric(cc.imag_unit) == "1.0*i"
    assert format_numeric(half + cc.imag_unit) == "0.5 + 1.0*i"
    assert format_numeric(half - cc.imag_unit) == "0.5 - 1.0*i"
    assert format_numeric(cc.sqrt5, digits=25) == "2.236067977499789696409174"


def test_seed_report_failure_section():
    report = build_seed_report(None, WeylError("equation for y fails"))
    assert not report.all_pass()
    assert report.sections[0].status == "fail"
    assert "equation for y fails" in dict(report.sections[0].steps[0].values)["error"]


def test_orbit_jsonl_schema():
    orbit = enumerate_orbit(depth=1)
    lines = orbit_jsonl(orbit).splitlines()
    assert len(lines) == 4
    rows = [json.loads(line) for line in lines]
    assert rows[0]["word"] == []
    assert rows[0]["params"] == ["2/5", "1/5", "1/10"]
    assert rows[0]["matsuda_row"] == 1
    for row in rows:
        assert set(row) == {"word", "params", "state", "matsuda_row"}
        assert set(row["state"]) == {"x", "y", "z", "w", "F"}


def test_orbit_section_flags_missing_row():
    base = seed_state()
    no_row = MatsudaResult(integral=True, a_mod=2, b_mod=4, row=None)
    node = OrbitNode(word=(), depth=0, state=base, matsuda=no_row)
    orbit = OrbitResult(depth=0, nodes=(node,), collisions=(), skipped=())
    assert orbit_section(orbit, check_rows=True).status == "fail"
    assert orbit_section(orbit, check_rows=False).status == "pass"
    report = build_orbit_report(orbit, check_rows=True)
    assert not report.all_pass()
