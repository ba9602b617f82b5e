import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from futurity.cli import run
from futurity.machine import futurity1936
from futurity.specfile import load_spec

from reference import STATIONARY_6DP


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_table3(capsys):
    code, out, _ = call(capsys, "table3", "--machine", "builtin:futurity1936", "--dp", "6")
    assert code == 0
    tab = rows(out)
    assert tab[0] == ["cam", *map(str, range(10)), "row_sum"]
    body = np.array([[float(x) for x in r[1:11]] for r in tab[1:]])
    assert np.array_equal(body, STATIONARY_6DP)
    assert {r[-1] for r in tab[1:]} == {"1/10"}


def test_mixture_win_rate(capsys):
    code, out, _ = call(capsys, "parrondo", "mixture", "--pA", "0.3", "--pB", "0.0666666667",
                        "--J", "10", "--gamma", "0.5", "--fair")
    assert code == 0
    kv = dict(rows(out)[1:])
    assert kv["casino_win_rate"] == "0.100383"


def test_analyze_deterministic(capsys):
    a = call(capsys, "analyze", "--machine", "builtin:futurity1936")[1]
    b = call(capsys, "analyze", "--machine", "builtin:futurity1936")[1]
    assert a == b
    kv = dict(rows(a)[1:])
    assert kv["mu_star"] == "0.838811" and kv["rho_0"] == "0.416991"


def test_precision_flag(capsys):
    out = call(capsys, "variance", "--dp", "3")[1]
    assert dict(rows(out)[1:])["sigma_star_sq"] == "6.796"


def test_doc_format(capsys, tmp_path):
    target = tmp_path / "t4.json"
    code, out, _ = call(capsys, "table4", "--format", "doc", "--out", str(target))
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert doc["rows"][0][10] == 8.96
    assert doc["meta"]["equilibrium_value"] == 0.960501


def test_spec_dump_round_trip(capsys, tmp_path):
    for extra in ([], ["--reels"]):
        out = call(capsys, "spec-dump", *extra)[1]
        path = tmp_path / "spec.json"
        path.write_text(out)
        assert load_spec(str(path)) == futurity1936()
        assert call(capsys, "analyze", "--machine", str(path))[1] == call(capsys, "analyze")[1]


def test_simulate(capsys):
    code, out, _ = call(capsys, "simulate", "--n", "1000", "--reps", "3", "--seed", "7")
    assert code == 0 and len(rows(out)) == 4
    assert out == call(capsys, "simulate", "--n", "1000", "--reps", "3", "--seed", "7", "--threads", "3")[1]
    code, out, _ = call(capsys, "simulate", "--strategy", "pattern", "--pattern", "AB", "--fair",
                        "--n", "50", "--path")
    assert code == 0 and rows(out)[0] == ["coup", "cumulative_profit"] and len(rows(out)) == 51


def test_fig1_overlay(capsys):
    code, out, _ = call(capsys, "fig1", "--n", "20", "--reps", "30")
    tab = rows(out)
    assert tab[0] == ["coup", "strategy", "expected_casino_profit", "simulated_mean", "simulated_se"]
    assert len(tab) == 1 + 7 * 20


def test_conjecture(capsys):
    code, out, err = call(capsys, "conjecture", "--J", "2-4", "--rs-max", "2")
    assert code == 0
    assert rows(out)[0] == ["J", "r", "s", "p_A", "p_B", "a", "b", "c", "d", "divides", "gap"]
    assert "0 violations" in err


@pytest.mark.parametrize("argv, name", [
    (["parrondo", "pointer", "--K", "10", "--fair"], "BadK"),
    (["parrondo", "pattern", "--pattern", "AAA", "--fair"], "BadPattern"),
    (["parrondo", "mixture", "--pA", "1.2", "--fair"], "BadDist"),
    (["analyze", "--machine", "builtin:nothing"], "BadSpecFile"),
])
def test_domain_errors(capsys, argv, name):
    code, _, err = call(capsys, *argv)
    assert code == 1 and err.startswith(name)


def test_unknown_field_rejected(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"J": 2, "dists": [{"0": "1/2", "1": "1/2"}] * 2, "comment": "x"}))
    code, _, err = call(capsys, "analyze", "--machine", str(path))
    assert code == 1 and err.startswith("BadSpecFile")


@pytest.mark.parametrize("argv", [[], ["nope"], ["table3", "--dp", "x"], ["parrondo", "mixture"],
                                  ["analyze", "--format", "xml"]])
def test_usage_errors(capsys, argv):
    assert call(capsys, *argv)[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "futurity", "table3", "--dp", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("cam,0,1")
