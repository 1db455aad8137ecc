import json
import subprocess
import sys

import pytest

from genconn.cli import main
from genconn.graph import complete_graph, serialize_graph


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def k4(tmp_path):
    path = tmp_path / "k4.g6"
    path.write_text(serialize_graph(complete_graph(4), "graph6") + "\n")
    return str(path)


def test_compute_complete_graph(capsys, k4):
    code, out, _ = run(capsys, "compute", "--param", "lambda", "-k", "3", k4)
    assert code == 0 and out.splitlines()[0] == "2" and "status: exact" in out


def test_construct_h_graph(capsys):
    code, out, _ = run(capsys, "construct", "--family", "h_graph", "--args", "t=2")
    line = out.strip()
    assert code == 0 and len(out.splitlines()) == 1 and line[0] == chr(63 + 7)


def test_disconnected_terminals(capsys, tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("4 2\n0 1\n2 3\n")
    code, out, _ = run(capsys, "compute", "--param", "lambda", "-k", "3", "--terminals", "0,1,2", str(path))
    assert code == 0 and out.splitlines()[0] == "0"


def test_construct_options(capsys):
    code, out, _ = run(capsys, "construct", "--family", "example3_pair", "--args", "r=1", "--companion",
                       "--output-format", "edge-list")
    assert code == 0 and out.strip()
    code, out, _ = run(capsys, "construct", "--family", "join_family", "--args", "k=3,n=9", "--declared")
    assert code == 0 and json.loads(out)["kappa_3"] == 3
    code, out, _ = run(capsys, "construct", "--family", "complete_minus", "--args", "n=5,removed=0-1:2-3")
    assert code == 0


def test_certificate_round_trip(capsys, tmp_path):
    g = tmp_path / "h.g6"
    run(capsys, "construct", "--family", "h_graph", "--args", "t=2", "-o", str(g))
    cert = tmp_path / "cert.json"
    code, _, _ = run(capsys, "certify", "--param", "kappa", "-k", "3", str(g), "-o", str(cert))
    assert code == 0
    code, out, _ = run(capsys, "verify-certificate", str(cert))
    assert code == 0 and out.startswith("valid: 1 trees")
    doc = json.loads(cert.read_text())
    doc["value"] = 2
    cert.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify-certificate", str(cert))
    assert code == 1 and out.startswith("invalid")


def test_compute_writes_certificate(capsys, k4, tmp_path):
    cert = tmp_path / "c.json"
    code, _, _ = run(capsys, "compute", "--param", "kappa", "-k", "4", k4, "--certificate", str(cert))
    assert code == 0 and json.loads(cert.read_text())["value"] == 2


def test_bound_commands(capsys, k4):
    code, out, _ = run(capsys, "bound", "--kind", "tutte", k4)
    assert code == 0 and json.loads(out)["bound"] == 2
    code, out, _ = run(capsys, "bound", "--kind", "counting", "--terminals", "0,1,2", k4)
    assert code == 0 and json.loads(out)["bound"] >= 2


def test_verify_command(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--check", "thm3_lambda_complete", "--corpus", "family:complete(n=2..5)",
                       "--json", str(report))
    assert code == 0 and "pass" in out
    assert json.loads(report.read_text())["failed"] == 0
    code, out, _ = run(capsys, "verify", "--check", "conjecture3_scan", "--corpus",
                       "random:n=6,p=0.5,trials=3,seed=1", "--output-format", "json")
    assert code == 0 and json.loads(out)["status"] == "no-counterexample-found"


def test_budget_exit_code(capsys, tmp_path):
    path = tmp_path / "f.g6"
    run(capsys, "construct", "--family", "figure2_family", "--args", "s=1,r=1", "-o", str(path))
    code, out, _ = run(capsys, "compute", "--param", "lambda", "--terminals", "0,1,2", str(path),
                       "--node-limit", "1", "--tree-limit", "1", "--partition-nodes", "1")
    assert code in (0, 3)
    assert (code == 3) == ("lower-bound-only" in out)
    code, _, err = run(capsys, "bound", "--kind", "tutte", str(path), "--partition-limit", "5")
    assert code == 3 and err


@pytest.mark.parametrize("argv, expected", [
    (["compute", "--param", "lambda", "-k", "3"], 2),
    (["compute", "--param", "nope", "-k", "3", "--graph", "C~"], 2),
    (["compute", "--param", "lambda", "-k", "9", "--graph", "C~"], 2),
    (["compute", "--param", "lambda", "-k", "3", "--graph", "C~", "--node-limit", "0"], 2),
    (["compute", "--param", "lambda", "-k", "3", "/no/such/file.g6"], 4),
    (["compute", "--param", "lambda", "-k", "3", "--graph", "!!"], 4),
    (["verify", "--check", "no_such_check", "--corpus", "family:complete(n=3)"], 2),
    (["verify", "--check", "obs1_chain", "--corpus", "atlas:/no/such/file"], 4),
    (["verify", "--check", "obs1_chain", "--corpus", "bogus"], 2),
    (["construct", "--family", "nope"], 2),
    (["construct", "--family", "h_graph", "--args", "t=2", "--companion"], 2),
    (["verify-certificate", "/no/such/cert.json"], 4),
    ([], 2),
])
def test_exit_codes(capsys, argv, expected):
    code, _, _ = run(capsys, *argv)
    assert code == expected


def test_help_lists_default_budgets(capsys):
    with pytest.raises(SystemExit):
        from genconn.cli import build_parser
        build_parser().parse_args(["compute", "--help"])
    out, _ = capsys.readouterr()
    assert "200000" in out and "10000000" in out


def test_output_is_byte_identical(tmp_path):
    path = tmp_path / "g.g6"
    path.write_text("F~aKW\n")
    cmd = [sys.executable, "-m", "genconn", "certify", "--param", "lambda", "-k", "3", str(path)]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd + ["--jobs", "2"], capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["value"] == 2
