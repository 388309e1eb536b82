import json
import subprocess
import sys

import pytest

from immsplit.cli import main
from immsplit.graph import parse_mgr_blocks
from immsplit.splitter import replay_trace


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


@pytest.mark.parametrize(
    "argv, verdict",
    [
        (["conn", "name:Q3", "--k", "3"], True),
        (["conn", "name:Q3", "--k", "4", "--internal"], True),
        (["conn", "name:C4", "--k", "4", "--nearly"], False),
        (["conn", "name:K5", "--k", "5"], False),
    ],
)
def test_conn(capsys, argv, verdict):
    code, rep = report(capsys, *argv)
    assert code == 0
    assert rep["verdicts"]["verdict"] is verdict
    assert list(rep) == ["command", "inputs_digest", "verdicts", "counterexamples"]


def test_conn_reads_files_and_reports_witness(capsys, tmp_path):
    f = tmp_path / "g.mgr"
    f.write_text("4 4\n0 1\n1 2\n2 3\n3 0\n")
    code, rep = report(capsys, "conn", str(f), "--k", "3")
    assert code == 0 and rep["verdicts"]["witness_cut"]["size"] == 2


def test_parse_error_exit_code(capsys, tmp_path):
    f = tmp_path / "bad.mgr"
    f.write_text("3 2\n0 1\n1 9\n")
    code, out, err = run(capsys, "conn", str(f))
    assert code == 1 and ":3:" in err


def test_usage_errors(capsys):
    assert run(capsys, "conn")[0] == 1
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "conn", "/nonexistent/file.mgr")[0] == 1
    assert run(capsys, "goodop", "name:K6", "name:K5", "--mode", "evenk:3")[0] == 1


@pytest.mark.parametrize(
    "g, h, found",
    [("octahedron", "K5", True), ("octahedron", "K33", False), ("K5", "K5", True)],
)
def test_immerse(capsys, tmp_path, g, h, found):
    cert = tmp_path / "cert.json"
    code, rep = report(capsys, "immerse", f"name:{g}", f"name:{h}", "--cert", str(cert))
    assert code == 0 and rep["verdicts"]["found"] is found
    assert cert.exists() == found
    if found:
        assert rep["verdicts"]["verified"]
        assert set(json.loads(cert.read_text())) == {"phi", "paths"}


def test_goodop_found(capsys, tmp_path):
    trace = tmp_path / "t.json"
    code, rep = report(capsys, "goodop", "name:K6", "name:K5", "--mode", "i4", "--trace", str(trace))
    assert code == 0 and rep["verdicts"]["found"] and rep["verdicts"]["verified"]
    assert replay_trace(json.loads(trace.read_text()))


def test_goodop_declared_exception(capsys):
    code, rep = report(capsys, "goodop", "name:Q3", "name:K4", "--mode", "i4")
    assert code == 0
    assert rep["verdicts"] == {
        "found": False,
        "declared_exception": True,
        "note": "declared exception: no good operation is expected",
    }


def test_goodop_precondition_exit(capsys):
    code, rep = report(capsys, "goodop", "name:K5", "name:K5", "--mode", "i4")
    assert code == 2 and rep["clause"] == "isomorphic"


def test_reduce(capsys, tmp_path):
    trace = tmp_path / "t.json"
    code, rep = report(capsys, "reduce", "name:K6", "name:K5", "--mode", "i4", "--trace", str(trace))
    assert code == 0 and rep["verdicts"]["reached"]
    assert replay_trace(json.loads(trace.read_text()))


def test_reduce_declared_stuck(capsys):
    code, rep = report(capsys, "reduce", "name:Q3", "name:K2^3", "--mode", "i4")
    assert code == 0 and rep["verdicts"]["declared_exception"]


def test_enum_blocks(capsys):
    code, out, _ = run(capsys, "enum", "--nmax", "3", "--mmax", "3", "--predicate", "connected")
    assert code == 0
    assert len(parse_mgr_blocks(out)) == 7
    code, out, _ = run(capsys, "enum", "--nmax", "2", "--mmax", "5", "--predicate", "kec", "--k", "4", "--count")
    assert out.strip() == "2"


def test_enum_guard(capsys):
    assert run(capsys, "enum", "--nmax", "9", "--mmax", "4")[0] == 1


def test_verify_identities_seeded(capsys):
    code, rep = report(capsys, "verify", "--suite", "identities", "--seed", "7", "--samples", "300")
    assert code == 0 and rep["verdicts"]["verdict"] == "pass"
    assert rep["counterexamples"] == []


def test_reports_are_byte_identical(capsys):
    argv = ["verify", "--suite", "corollary", "--nmax", "6", "--mmax", "12"]
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv)[1]
    c = run(capsys, *argv, "--jobs", "2")[1]
    assert a == b
    assert json.loads(a)["verdicts"] == json.loads(c)["verdicts"]


def test_timing_is_opt_in(capsys):
    _, rep = report(capsys, "--timing", "conn", "name:K4")
    assert "wall_time" in rep
    _, rep = report(capsys, "conn", "name:K4")
    assert "wall_time" not in rep


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "immsplit", "conn", "name:K5", "--k", "4"],
        capture_output=True, text=True,
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)["verdicts"]["verdict"] is True
