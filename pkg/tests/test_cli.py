import io
import json
import subprocess
import sys

import pytest

from linkgate.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_alex_hopf():
    code, out, _ = call("alex", "--builtin", "hopf")
    assert code == 0
    assert "h1 rank: 0" in out and "torsion Alexander polynomial: 1" in out


def test_alex_json_fields():
    code, out, _ = call("alex", "--builtin", "trefoil", "--json")
    d = json.loads(out)
    assert code == 0
    assert d["schema_version"] == 1 and d["command"] == "alex"
    assert d["results"]["torsion_poly"] == "t^2 - t + 1"
    assert d["results"]["h1_rank"] == 0 and d["results"]["symmetric"] is True
    assert "timings" not in d


def test_hopf_test_verdicts():
    assert "verdict: PASSES_ABELIAN" in call("hopf-test", "--builtin", "hopf")[1]
    code, out, _ = call("hopf-test", "--poly", "t1*t2-t1-t2+3")
    assert code == 0 and "verdict: OBSTRUCTED" in out
    assert "verdict: PASSES_ABELIAN" in call("hopf-test", "--poly", "1")[1]
    assert "verdict: OBSTRUCTED" in call("hopf-test", "--builtin", "hopf_trefoil")[1]


def test_pair_test_outcomes():
    assert "outcome: pass" in call("pair-test", "--builtin", "hopf", "--builtin", "hopf")[1]
    code, out, _ = call("pair-test", "--builtin", "unlink2", "--builtin", "hopf")
    assert code == 0 and "ranks: 1 vs 0 (different)" in out and "outcome: fail" in out
    code, out, _ = call("pair-test", "--poly", "1", "--poly", "t-3+t^-1")
    assert code == 0 and "outcome: fail" in out and "not checked" in out
    assert call("pair-test", "--builtin", "hopf", "--poly", "1")[0] == 3


def test_covers_hopf():
    code, out, _ = call("covers", "--builtin", "hopf", "--p", "2", "--i", "1", "--j", "1")
    assert code == 0
    assert out.splitlines() == ["Z^3"] * 4
    code, out, _ = call("covers", "--builtin", "hopf", "--p", "3", "--i", "1", "--j", "1", "--json")
    assert len(json.loads(out)["results"]["covers"]) == 9


def test_metabolizers():
    code, out, _ = call("metabolizers", "--form", "[[9]]")
    assert code == 0
    assert out.splitlines() == ["group: Z/9", "metabolizers: 1", "⟨3⟩"]


def test_check_thm23_small():
    code, out, _ = call("check-thm23", "--random", "10", "--seed", "7")
    assert code == 0 and out.splitlines()[-1] == "10/10 hold"


@pytest.mark.parametrize(
    "argv,code",
    [
        (["alex", "--pd", "X[1,2,3]"], 2),
        (["alex", "--braid", "BR 2: 5"], 2),
        (["alex", "--builtin", "nosuchlink"], 2),
        (["hopf-test", "--poly", "t +"], 2),
        (["metabolizers", "--form", "[[1, 2"], 2),
        (["hopf-test", "--builtin", "unlink2"], 3),
        (["hopf-test", "--builtin", "solomon"], 3),
        (["covers", "--builtin", "trefoil", "--p", "2", "--i", "1", "--j", "1"], 3),
        (["metabolizers", "--form", "[[1, 2], [3, 4]]"], 3),
        (["alex", "--builtin", "hopf", "--builtin", "hopf"], 3),
        (["check-thm23", "--random", "200", "--budget-ms", "1"], 4),
        (["metabolizers", "--form", "[[4096, 0], [0, 2]]"], 4),
    ],
)
def test_exit_codes(argv, code):
    assert call(*argv)[0] == code


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as info:
        call("covers", "--builtin", "hopf")
    assert info.value.code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["alex", "--builtin", "whitehead", "--json"],
        ["hopf-test", "--builtin", "hopf_trefoil", "--json"],
        ["covers", "--builtin", "hopf", "--p", "2", "--i", "1", "--j", "1", "--json"],
        ["check-thm23", "--random", "8", "--seed", "3", "--json"],
    ],
)
def test_json_is_deterministic(argv):
    a = call(*argv)[1]
    b = call(*argv)[1]
    assert a == b and a.encode() == b.encode()


def test_timings_only_on_request():
    d = json.loads(call("alex", "--builtin", "hopf", "--json", "--timings")[1])
    assert "total_s" in d["timings"]


def test_env_budget(monkeypatch):
    monkeypatch.setenv("LINKGATE_BUDGET_MS", "1")
    assert call("check-thm23", "--random", "200")[0] == 4
    monkeypatch.setenv("LINKGATE_BUDGET_MS", "600000")
    assert call("check-thm23", "--random", "3")[0] == 0


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "linkgate.cli", "alex", "--builtin", "trefoil"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "t^2 - t + 1" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "linkgate.cli", "alex", "--pd", "X[1,2,3]"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 2
