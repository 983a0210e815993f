import json
import os

import pytest

from agmod import cli
from agmod.theorems import TheoremVerdict


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


INSTANCE = """\
characteristic: 32003
variables: x, y
matrix:
  [y^2, 0]
  [x^2, y]
seed: 3
"""


@pytest.fixture
def instance_file(tmp_path):
    path = tmp_path / "instance.txt"
    path.write_text(INSTANCE)
    return str(path)


def test_report_human(instance_file, capsys):
    code, out, _ = run(capsys, ["report", instance_file])
    assert code == 0
    assert "h-polynomial" in out and "2 + z" in out
    assert "depth G(M)" in out


def test_report_structured_and_deterministic(instance_file, capsys):
    code1, out1, _ = run(capsys, ["report", instance_file, "--format", "structured"])
    code2, out2, _ = run(capsys, ["report", instance_file, "--format", "structured"])
    assert code1 == code2 == 0
    assert out1 == out2  # byte-identical
    rec = json.loads(out1)
    assert rec["h"] == [2, 1] and rec["depth_g"] == 1 and rec["mu"] == 2
    assert rec["flags"]["minimal_multiplicity"] is True
    assert rec["reduction_number"] == 1
    assert rec["e"] == [3, 1]


def test_report_round_trips_machine_fields(instance_file, capsys):
    from agmod.instancefile import load_instance
    from agmod.analysis import analyze

    _, out, _ = run(capsys, ["report", instance_file, "--format", "structured"])
    rec = json.loads(out)
    a = analyze(load_instance(instance_file).presentation, seed=rec["seed"],
                truncation=rec["truncation"])
    assert list(a.h.h) == rec["h"]
    assert a.e == rec["e"]
    assert a.depth == rec["depth_g"]
    assert [list(f) for f in a.base_forms] == rec["forms"]


def test_report_stability_flag(instance_file, capsys):
    code, out, _ = run(capsys, ["report", instance_file, "--check-stability",
                                "--format", "structured"])
    assert code == 0
    assert json.loads(out)["checks"]["truncation_stability"] is True


def test_input_error_reports_position(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("variables: x, y\nmatrix:\n  [y^2, 0]\n  [x^2, q]\n")
    code, _, err = run(capsys, ["report", str(bad)])
    assert code == 2
    assert "line 4" in err and "unknown identifier" in err


def test_nonsquare_matrix_rejected(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("variables: x, y\nmatrix:\n  [y^2, 0]\n")
    code, _, err = run(capsys, ["report", str(bad)])
    assert code == 2


def test_rr_table(instance_file, capsys):
    code, out, _ = run(capsys, ["rr", instance_file, "--levels", "3",
                                "--format", "structured"])
    assert code == 0
    rec = json.loads(out)
    assert rec["lengths"] == {"1": 0, "2": 0, "3": 0}


def test_rr_table_depth_zero(tmp_path, capsys):
    path = tmp_path / "d0.txt"
    path.write_text("variables: x, y\nmatrix:\n  [y^2, 0]\n  [x, y]\n")
    code, out, _ = run(capsys, ["rr", str(path), "--levels", "2",
                                "--format", "structured"])
    assert code == 0
    assert json.loads(out)["lengths"] == {"1": 1, "2": 0}


def test_examples_pass(capsys):
    code, out, _ = run(capsys, ["examples", "--format", "structured"])
    assert code == 0
    rec = json.loads(out)
    assert all(r["status"] == "ok" for r in rec["rows"])


def test_verify_ok_and_unknown_id(capsys):
    code, out, _ = run(capsys, ["verify", "universal", "--trials", "6",
                                "--seed", "2", "--jobs", "1"])
    assert code == 0 and "0 failed" in out
    code, _, err = run(capsys, ["verify", "nonsense", "--trials", "1"])
    assert code == 2 and "unknown suite" in err


def test_verify_failure_path_writes_reproducer(tmp_path, capsys, monkeypatch):
    # force a failing verdict to exercise the exit-4 path and the dump
    def fake_check(pres, seed):
        return TheoremVerdict("universal", "seed=0 phi=fake", True, False, {})

    monkeypatch.setitem(cli.run_suite.__globals__["CHECKS"], "universal", fake_check)
    code, out, err = run(capsys, [
        "verify", "universal", "--trials", "2", "--seed", "1",
        "--jobs", "1", "--dump-dir", str(tmp_path),
    ])
    assert code == 4 and "2 failed" in out
    dumps = list(tmp_path.iterdir())
    assert dumps and all(p.name.startswith("reproducer_") for p in dumps)


def test_family_file_input(tmp_path, capsys):
    fam = tmp_path / "family.txt"
    fam.write_text(INSTANCE + "\n\n" + INSTANCE.replace("x^2", "x"))
    code, out, _ = run(capsys, ["verify", "e3mu2", "--family", str(fam),
                                "--trials", "2", "--jobs", "1"])
    assert code == 0 and "2 passed" in out


def test_truncation_exhaustion_exits_3(tmp_path, capsys):
    # degree of h exceeds what the truncation cap can stabilize
    path = tmp_path / "huge.txt"
    path.write_text("variables: x, y\nmatrix:\n  [y^23, 0]\n  [0, y]\n")
    code, _, err = run(capsys, ["report", str(path)])
    assert code == 3 and "resource exhaustion" in err


def test_jobs_flag_runs_parallel(capsys):
    code, out, _ = run(capsys, ["verify", "e3mu2", "--trials", "4",
                                "--seed", "5", "--jobs", "2"])
    assert code == 0 and "0 failed" in out


def test_rr_empty_table(instance_file, capsys):
    code, out, _ = run(capsys, ["rr", instance_file, "--levels", "0",
                                "--format", "structured"])
    assert code == 0 and json.loads(out)["lengths"] == {}


def test_seed_changes_structured_forms(instance_file, capsys):
    _, out1, _ = run(capsys, ["report", instance_file, "--format", "structured",
                              "--seed", "101"])
    _, out2, _ = run(capsys, ["report", instance_file, "--format", "structured",
                              "--seed", "102"])
    rec1, rec2 = json.loads(out1), json.loads(out2)
    assert rec1["forms"] != rec2["forms"]  # different verified forms
    for key in ("h", "e", "depth_g", "reduction_number"):
        assert rec1[key] == rec2[key]  # same invariants


def test_packaged_sample_instances(capsys):
    here = os.path.join(os.path.dirname(__file__), "..", "demos", "instances")
    for fname, h, depth in (
        ("triangular_sq.txt", [2, 1], 1),
        ("triangular_lin.txt", [2, 0, 1], 0),
        ("threevar_depth0.txt", [3, 0, 3, -1], 0),
    ):
        code, out, _ = run(capsys, ["report", os.path.join(here, fname),
                                    "--format", "structured"])
        assert code == 0
        rec = json.loads(out)
        assert rec["h"] == h and rec["depth_g"] == depth
