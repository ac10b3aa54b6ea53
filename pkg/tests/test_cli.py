"""Command line behavior: exit codes, report files, input validation."""

from __future__ import annotations

import json

import pytest

from sasano_galois.cli import main

S0_IMAGE = {
    "params": ["-2/5", "3/5", "1/10"],
    "x": "-2*t/5",
    "y": "0",
    "z": "-1/t",
    "w": "-2*t/5",
}


def run(tmp_path, *argv):
    return main(["--report-dir", str(tmp_path / "reports"), *argv])


def read_json(tmp_path, stem):
    return json.loads((tmp_path / "reports" / f"{stem}.json").read_text())


def test_verify_seed_default(tmp_path, capsys):
    assert run(tmp_path, "verify-seed") == 0
    out = capsys.readouterr().out
    assert "model check: pass" in out
    assert (tmp_path / "reports" / "seed_check.json").exists()
    assert (tmp_path / "reports" / "seed_check.md").exists()


def test_verify_seed_wrong_params_fails(tmp_path):
    assert run(tmp_path, "verify-seed", "--params", "1/2,1/8,1/8") == 1
    data = read_json(tmp_path, "seed_check")
    assert data["sections"][0]["status"] == "fail"


def test_verify_seed_malformed_params(tmp_path, capsys):
    assert run(tmp_path, "verify-seed", "--params", "1/2,oops,1/8") == 2
    assert run(tmp_path, "verify-seed", "--params", "1/2,1/8") == 2
    assert run(tmp_path, "verify-seed", "--params", "1,1,1") == 2
    assert "input error" in capsys.readouterr().err


def test_verify_seed_solution_file(tmp_path):
    path = tmp_path / "s0_image.json"
    path.write_text(json.dumps(S0_IMAGE))
    assert run(tmp_path, "verify-seed", "--solution-file", str(path)) == 0
    data = read_json(tmp_path, "seed_check")
    assert data["sections"][0]["status"] == "pass"


def test_verify_seed_solution_file_errors(tmp_path):
    missing = dict(S0_IMAGE)
    del missing["z"]
    bad_key = tmp_path / "missing.json"
    bad_key.write_text(json.dumps(missing))
    assert run(tmp_path, "verify-seed", "--solution-file", str(bad_key)) == 2

    not_json = tmp_path / "garbled.json"
    not_json.write_text("{ not json")
    assert run(tmp_path, "verify-seed", "--solution-file", str(not_json)) == 2

    assert run(tmp_path, "verify-seed", "--solution-file", str(tmp_path / "absent.json")) == 2


def test_prove_full(tmp_path, capsys):
    assert run(tmp_path, "prove", "--depth", "1") == 0
    out = capsys.readouterr().out
    assert "verdict: NotIntegrable" in out
    data = read_json(tmp_path, "proof")
    assert data["verdict"] == "NotIntegrable"
    assert data["sections"][-1]["name"] == "orbit summary"


def test_prove_stop_after(tmp_path):
    assert run(tmp_path, "prove", "--stop-after", "reduction") == 0
    data = read_json(tmp_path, "proof")
    assert [s["name"] for s in data["sections"]][-1] == "reduction trace"
    assert "verdict" not in data


def test_prove_format_json_only(tmp_path):
    assert main(
        ["--report-dir", str(tmp_path / "reports"), "--format", "json", "prove",
         "--stop-after", "nve"]
    ) == 0
    assert (tmp_path / "reports" / "proof.json").exists()
    assert not (tmp_path / "reports" / "proof.md").exists()


def test_orbit_depth_one(tmp_path, capsys):
    assert run(tmp_path, "orbit", "--depth", "1", "--check-matsuda") == 0
    out = capsys.readouterr().out
    assert "orbit summary: pass" in out
    lines = (tmp_path / "reports" / "orbit.jsonl").read_text().splitlines()
    assert len(lines) == 4
    words = [tuple(json.loads(line)["word"]) for line in lines]
    assert words == [(), ("s0",), ("s1",), ("s2",)]


def test_orbit_depth_zero(tmp_path):
    assert run(tmp_path, "orbit", "--depth", "0") == 0
    lines = (tmp_path / "reports" / "orbit.jsonl").read_text().splitlines()
    assert len(lines) == 1


def test_reports_byte_stable(tmp_path):
    assert main(["--report-dir", str(tmp_path / "a"), "prove", "--stop-after", "nve"]) == 0
    assert main(["--report-dir", str(tmp_path / "b"), "prove", "--stop-after", "nve"]) == 0
    assert (tmp_path / "a" / "proof.json").read_bytes() == (
        tmp_path / "b" / "proof.json"
    ).read_bytes()
    assert (tmp_path / "a" / "proof.md").read_bytes() == (
        tmp_path / "b" / "proof.md"
    ).read_bytes()


def test_precision_guard(tmp_path):
    with pytest.raises(SystemExit) as err:
        main(["--precision", "10", "prove"])
    assert err.value.code == 2


def test_negative_depth_rejected(tmp_path):
    with pytest.raises(SystemExit) as err:
        main(["orbit", "--depth", "-3"])
    assert err.value.code == 2
