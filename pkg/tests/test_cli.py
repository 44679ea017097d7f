import json
import subprocess
import sys

import pytest

from gowerslab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def strip_runtime(text):
    doc = json.loads(text)
    doc["meta"].pop("runtime_ms")
    return doc


def test_primes_gamma(capsys):
    code, out, _ = run(capsys, "primes", "gamma", "--pmax", "100000")
    doc = json.loads(out)
    assert code == 0 and doc["command"] == "primes gamma"
    assert set(doc["meta"]) >= {"version", "seed", "precision", "runtime_ms"}
    assert doc["result"]["value"].startswith("0.5189") and doc["result"]["tail_bound"] > 0


def test_bracket_verify_key(capsys):
    code, out, _ = run(capsys, "bracket", "verify", "--case", "key", "--n-max", "10000")
    doc = json.loads(out)
    assert code == 0 and doc["result"]["passed"] and doc["meta"]["precision"] == "rational"
    assert all("/" in v for v in doc["result"]["params"].values())


def test_usage_errors(capsys):
    assert run(capsys, "gowers", "norm", "--k", "7", "--N", "8")[0] == 2
    assert run(capsys, "gowers", "norm", "--bogus")[0] == 2
    assert run(capsys, "nosuch")[0] == 2
    code, _, err = run(capsys, "equidist", "ratapprox", "--params", "{not json")
    assert code == 2 and "JSON" in err


def test_verification_failure_exit_code(capsys):
    # a deliberately strict regularity constant cannot be met near a jump
    code, out, _ = run(capsys, "bohr", "regular", "--params", '{"S": ["1/10"], "rho0": 0.08, "N": 10000, "C_reg": 0.001}')
    assert code == 1 and json.loads(out)["result"]["passed"] is False


def test_identical_invocations_identical_json(capsys):
    args = ("verify", "pipeline", "--params", '{"N": 12, "family": "random"}', "--seed", "9")
    first = strip_runtime(run(capsys, *args)[1])
    second = strip_runtime(run(capsys, *args, "--threads", "3")[1])
    assert first == second


def test_equidist_commands(capsys):
    doc = json.loads(run(capsys, "equidist", "relation", "--params", '{"alphas": ["1/2", "1/3"], "M": 3}')[1])
    assert doc["result"]["relation"] == [2, 0]
    doc = json.loads(run(capsys, "equidist", "solve", "--params", '{"A": [[1, 1]], "b": [2]}')[1])
    assert doc["result"]["x"] == ["2/1", "0/1"]
    doc = json.loads(run(capsys, "equidist", "weyl", "--params", '{"coeffs": [0, "1/3"], "N": 3}')[1])
    assert isinstance(doc["result"]["value"], list) and len(doc["result"]["value"]) == 2


def test_nil_eval_csv(capsys):
    code, out, _ = run(capsys, "nil", "eval", "--group", "free2:2", "--seq", '{"xi": ["1/3", "1/7"]}',
                       "--coord", "2,1", "--n-max", "4", "--precision", "rational")
    assert code == 0 and out.splitlines()[0] == "n,phase" and len(out.splitlines()) == 5


def test_bohr_build_csv(capsys):
    code, out, _ = run(capsys, "bohr", "build", "--params", '{"S": ["1/2"], "rho": 0.3, "N": 100}',
                       "--output", "csv")
    assert code == 0 and out.split() == ["n"] + [str(m) for m in range(2, 31, 2)]


def test_sumset_input_csv(tmp_path, capsys):
    path = tmp_path / "a.csv"
    path.write_text("x\n" + "\n".join(str(v) for v in range(2, 41, 2)) + "\n")
    doc = json.loads(run(capsys, "sumset", "lev", "--input", str(path), "--params", '{"N": 40, "k": 4}')[1])
    assert doc["result"]["d"] == 2


def test_gowers_norm_with_figure(tmp_path, capsys):
    fig = tmp_path / "f.png"
    code, out, _ = run(capsys, "gowers", "norm", "--k", "3", "--N", "32", "--phase",
                       '{"type": "poly", "coeffs": [0, 0, 0.3]}', "--figure", str(fig))
    doc = json.loads(out)
    assert code == 0 and abs(doc["result"]["norm"] - 1) < 1e-9
    assert fig.stat().st_size > 0 and doc["meta"]["figure"] == str(fig)


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "gowerslab.cli", "primes", "count-ap", "--n", "29"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["result"]["count"] == 1
