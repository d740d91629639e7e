"""Command-line tool: exit codes, determinism, and a golden comparison of
the stabilized transfer against the independently constructed coalgebra."""

import json
import os
import subprocess
import sys

import pytest

from htalg.core import Q, rat_str
from htalg.lie import uvw_coalgebra

DATA = os.path.join(os.path.dirname(__file__), "data")


def data(name):
    return os.path.join(DATA, name)


def run(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "htalg.cli", *argv],
        capture_output=True,
        text=True,
    )
    return proc


def test_bernoulli_table():
    proc = run("bernoulli", "--max", "6")
    assert proc.returncode == 0
    out = json.loads(proc.stdout)
    assert out["bernoulli"]["0"] == "1"
    assert out["bernoulli"]["1"] == "-1/2"
    assert out["bernoulli"]["4"] == "-1/30"
    assert out["bernoulli"]["5"] == "0"


def test_retract_check_exit_zero():
    proc = run("retract-check", "--level", "4", "--max-index", "8")
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["defects"] == []


def test_unknown_subcommand_exits_two():
    assert run("frobnicate").returncode == 2


def test_missing_file_exits_two():
    proc = run(
        "mc-check",
        "--algebra", data("no_such_file.json"),
        "--element", data("elem_a.json"),
        "--cap", "4",
    )
    assert proc.returncode == 2
    assert "error" in proc.stderr


def test_mc_check_pass_and_fail():
    ok = run(
        "mc-check",
        "--algebra", data("orbit_algebra.json"),
        "--element", data("elem_a.json"),
        "--cap", "4",
    )
    assert ok.returncode == 0
    bad = run(
        "mc-check",
        "--algebra", data("abelian_algebra.json"),
        "--element", data("elem_m.json"),
        "--cap", "4",
    )
    assert bad.returncode == 1
    assert json.loads(bad.stdout)["defect"]


def test_gauge_flow_and_quillen_check():
    flow = run(
        "gauge-flow",
        "--algebra", data("orbit_algebra.json"),
        "--alpha0", data("elem_a.json"),
        "--x", data("elem_x0.json"),
        "--truncation", "4",
    )
    assert flow.returncode == 0
    out = json.loads(flow.stdout)
    assert out["curve"]["t^2"] == [{"coeff": "1/2", "term": "a"}]
    assert out["mc_defect"] == {}
    q = run(
        "quillen-check",
        "--algebra", data("orbit_algebra.json"),
        "--alpha0", data("elem_a.json"),
        "--x", data("elem_x0.json"),
        "--truncation", "4",
    )
    assert q.returncode == 0


def test_cylinder_check_trivial():
    proc = run(
        "cylinder-check",
        "--algebra", data("orbit_algebra.json"),
        "--alpha0", data("elem_zero.json"),
        "--alpha1", data("elem_zero.json"),
        "--xi", data("elem_zero.json"),
        "--cap", "4",
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["pass"] is True


def test_coherence_of_supplied_coalgebra():
    proc = run(
        "coherence", "--max-arity", "3",
        "--input", data("uvw_coalgebra4.json"),
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["defects"] == []


def test_lxy_defect_identity():
    proc = run(
        "lxy-defect",
        "--x", data("dual_numbers.json"),
        "--y", data("dual_numbers.json"),
        "--phi", data("phi_identity.json"),
        "--caps", "4,4,4",
    )
    assert proc.returncode == 0
    out = json.loads(proc.stdout)
    assert out["equal"] is True
    assert out["coalgebra_defect"] == []


def test_ls_residuals_empty():
    proc = run("ls", "--max-weight", "5")
    assert proc.returncode == 0
    out = json.loads(proc.stdout)
    assert all(v == [] for v in out["d_square_residuals"].values())


def test_decorate_arity_two():
    proc = run("decorate", "--cell", "01", "--arity", "2", "--level", "3")
    assert proc.returncode == 0
    out = json.loads(proc.stdout)
    assert {"coeff": "1/2", "word": ["01", "0"]} in out["terms"]
    assert len(out["terms"]) == 4


def test_output_is_deterministic():
    a = run("transfer", "--max-arity", "3", "--stabilized")
    b = run("transfer", "--max-arity", "3", "--stabilized")
    assert a.stdout == b.stdout
    assert a.returncode == 0


def golden_transfer_json(max_arity):
    """The expected `transfer --stabilized` payload, built from the
    independently constructed coalgebra through the sign dictionary
    u -> 1, v -> 0, w -> 01 with a -1 on every identification."""
    U = uvw_coalgebra(max_arity)
    to_cell = {"u": "1", "v": "0", "w": "01"}
    coops = {}
    for name in ("u", "v", "w"):
        per = {}
        for k in range(1, max_arity + 1):
            entries = []
            for word, c in U.delta(k, name).items():
                cell_word = tuple(("cell", to_cell[x]) for x in word)
                sign = Q(-1) * Q(-1) ** len(word)
                entries.append((cell_word, c * sign))
            entries.sort(key=lambda e: repr(e[0]))
            per[str(k)] = [
                {"word": [x[1] for x in w], "coeff": rat_str(c)}
                for w, c in entries
            ]
        coops[to_cell[name]] = per
    return {
        "command": "transfer",
        "cooperations": coops,
        "levels": [max_arity + 1 + s for s in range(4)],
        "max_arity": max_arity,
        "stabilized": True,
    }


def test_stabilized_transfer_matches_golden_bytes(tmp_path):
    expected = json.dumps(
        golden_transfer_json(4), sort_keys=True, separators=(",", ":")
    )
    golden = tmp_path / "transfer_golden.json"
    golden.write_text(expected + "\n")
    proc = run("transfer", "--max-arity", "4", "--stabilized")
    assert proc.returncode == 0
    assert proc.stdout == golden.read_text()
