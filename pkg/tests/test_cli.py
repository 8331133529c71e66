"""End-to-end command-line runs in subprocesses.

Exit codes are part of the contract: 0 solved/verified, 2 not solvable,
1 anything else, with a single ERROR line on stderr for the 1 cases.
"""

import json
import os
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "vekua.cli"]


def run(*argv, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        CLI + list(argv), capture_output=True, text=True, env=env
    )


def write_doc(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def solvable_doc():
    # boundary data of w = z
    return {
        "schema_version": 1,
        "kind": "disk-poly",
        "payload": {"order": 1, "gammas": [[{"m": 1, "re": 1, "im": 0}]]},
    }


def unsolvable_doc():
    # zeta^{-1} trace: no polyanalytic extension
    return {
        "schema_version": 1,
        "kind": "disk-poly",
        "payload": {"order": 1, "gammas": [[{"m": -1, "re": 1, "im": 0}]]},
    }


def test_solve_writes_solution_and_report(tmp_path):
    prob = write_doc(tmp_path, "p.json", solvable_doc())
    out = tmp_path / "out"
    r = run("solve", prob, "--out", str(out), "--grid", "16")
    assert r.returncode == 0, r.stderr
    report = json.loads((out / "report.json").read_text())
    assert report["verdict"] == "solved"
    assert report["residual"]["max_abs"] < 1e-6
    assert report["boundary"]["gamma0_mismatch"] < 1e-6
    header = (out / "solution.csv").read_text().splitlines()[0]
    assert header == "x,y,re,im"


def test_check_does_not_write_csv(tmp_path):
    prob = write_doc(tmp_path, "p.json", solvable_doc())
    out = tmp_path / "out"
    r = run("check", prob, "--out", str(out), "--grid", "16")
    assert r.returncode == 0, r.stderr
    assert (out / "report.json").exists()
    assert not (out / "solution.csv").exists()


def test_unsolvable_exits_2_with_conditions(tmp_path):
    prob = write_doc(tmp_path, "p.json", unsolvable_doc())
    out = tmp_path / "out"
    r = run("solve", prob, "--out", str(out), "--grid", "16")
    assert r.returncode == 2
    report = json.loads((out / "report.json").read_text())
    assert report["verdict"] == "not_solvable"
    assert max(report["conditions"]["k_max"]) > 0.5
    assert not (out / "solution.csv").exists()


def test_circumference_is_a_hard_error(tmp_path):
    doc = {
        "schema_version": 1,
        "kind": "conic-bianalytic",
        "payload": {
            "conic": [1, 0, 1, 0, 0, -1],
            "data": {"frame": "zzbar", "terms": [{"i": 1, "j": 1, "re": 1}]},
        },
    }
    prob = write_doc(tmp_path, "p.json", doc)
    r = run("solve", prob, "--out", str(tmp_path / "out"))
    assert r.returncode == 1
    err_lines = [ln for ln in r.stderr.splitlines() if ln]
    assert len(err_lines) == 1
    assert err_lines[0].startswith("ERROR CIRCUMFERENCE:")


def test_schema_error_single_line(tmp_path):
    doc = solvable_doc()
    doc["payload"]["typo_field"] = 1
    prob = write_doc(tmp_path, "p.json", doc)
    r = run("check", prob, "--out", str(tmp_path / "out"))
    assert r.returncode == 1
    err_lines = [ln for ln in r.stderr.splitlines() if ln]
    assert len(err_lines) == 1 and err_lines[0].startswith("ERROR BAD_SCHEMA:")

    notjson = tmp_path / "nj.json"
    notjson.write_text("{oops")
    r = run("check", str(notjson), "--out", str(tmp_path / "out"))
    assert r.returncode == 1
    assert "ERROR BAD_SCHEMA:" in r.stderr


def test_bad_usage_exits_1():
    r = run("solve")
    assert r.returncode == 1
    assert "ERROR BAD_USAGE:" in r.stderr


def test_reruns_byte_identical(tmp_path):
    prob = write_doc(tmp_path, "p.json", solvable_doc())
    outs = []
    for name in ("a", "b"):
        out = tmp_path / name
        r = run("solve", prob, "--out", str(out), "--grid", "12")
        assert r.returncode == 0, r.stderr
        outs.append(out)
    for fname in ("solution.csv", "report.json"):
        assert (outs[0] / fname).read_bytes() == (outs[1] / fname).read_bytes()


def test_thread_count_does_not_change_output(tmp_path):
    prob = write_doc(tmp_path, "p.json", solvable_doc())
    blobs = []
    for name, threads in (("t1", "1"), ("t7", "7")):
        out = tmp_path / name
        r = run(
            "solve", prob, "--out", str(out), "--grid", "12",
            env_extra={"VEKUA_THREADS": threads},
        )
        assert r.returncode == 0, r.stderr
        blobs.append((out / "solution.csv").read_bytes())
    assert blobs[0] == blobs[1]
    # validation happens where the pool is consulted: grid evaluation
    r = run("solve", prob, "--out", str(tmp_path / "tx"), "--grid", "8",
            env_extra={"VEKUA_THREADS": "zero"})
    assert r.returncode == 1 and "VEKUA_THREADS" in r.stderr


def test_witness_flags_and_report(tmp_path):
    out = tmp_path / "wit"
    r = run("witness", "--order", "2", "--count", "3", "--coeff", "z",
            "--out", str(out), "--grid", "12")
    assert r.returncode == 0, r.stderr
    report = json.loads((out / "report.json").read_text())
    assert report["count"] == 3 and report["gram"]["independent"] is True
    for k in range(3):
        assert (out / f"witness_{k:02d}.csv").exists()
    for entry in report["witnesses"]:
        assert entry["boundary_sup"] < 1e-10
        assert entry["residual_max"] < 1e-3


def test_witness_needs_order_and_count(tmp_path):
    r = run("witness", "--out", str(tmp_path))
    assert r.returncode == 1 and "ERROR BAD_SCHEMA:" in r.stderr


def test_render_channels(tmp_path):
    prob = write_doc(tmp_path, "p.json", solvable_doc())
    out = tmp_path / "out"
    r = run("solve", prob, "--out", str(out), "--grid", "12")
    assert r.returncode == 0, r.stderr
    csv = str(out / "solution.csv")
    r = run("render", csv, "--channel", "abs")
    assert r.returncode == 0, r.stderr
    assert (out / "solution_abs.pgm").exists()
    assert r.stdout.strip().endswith("solution_abs.pgm")
    r = run("render", csv, "--channel", "phase")
    assert r.returncode == 1 and "ERROR BAD_USAGE:" in r.stderr
    # j channels only exist for bicomplex output
    r = run("render", csv, "--channel", "j_re")
    assert r.returncode == 1


def test_verify_solvable_passes(tmp_path):
    doc = {
        "schema_version": 1,
        "kind": "verify",
        "payload": {"problem": solvable_doc(), "tolerance": 1e-6},
    }
    prob = write_doc(tmp_path, "p.json", doc)
    out = tmp_path / "ver"
    r = run("verify", prob, "--out", str(out), "--grid", "12")
    assert r.returncode == 0, r.stderr
    report = json.loads((out / "report.json").read_text())
    assert report["passed"] is True
    assert set(report["checks"]) == {
        "solvability_conditions", "iterated_residual", "boundary_trace",
    }
    for chk in report["checks"].values():
        assert chk["pass"] is True and chk["value"] <= chk["threshold"]


def test_verify_unsolvable_exits_2(tmp_path):
    doc = {
        "schema_version": 1,
        "kind": "verify",
        "payload": {"problem": unsolvable_doc()},
    }
    prob = write_doc(tmp_path, "p.json", doc)
    out = tmp_path / "ver"
    r = run("verify", prob, "--out", str(out), "--grid", "12")
    assert r.returncode == 2
    report = json.loads((out / "report.json").read_text())
    assert report["passed"] is False
    assert report["checks"]["solvability_conditions"]["pass"] is False


def test_verify_kind_required_for_verify_command(tmp_path):
    prob = write_doc(tmp_path, "p.json", solvable_doc())
    r = run("verify", prob, "--out", str(tmp_path / "v"))
    assert r.returncode == 0  # bare problems get wrapped with defaults
    doc = {
        "schema_version": 1,
        "kind": "verify",
        "payload": {"problem": solvable_doc()},
    }
    vp = write_doc(tmp_path, "v.json", doc)
    r = run("solve", vp, "--out", str(tmp_path / "s"))
    assert r.returncode == 1 and "ERROR BAD_SCHEMA:" in r.stderr
