import json
import subprocess
import sys

import pytest

from cmsym import cli
from cmsym.scalars import parse_scalar
from cmsym.symfunc import SymFunc


def run(*argv):
    return cli.run(list(argv))


def cms(*argv, env=None):
    return subprocess.run([sys.executable, "-m", "cmsym.cli", *argv], capture_output=True, text=True, env=env)


def test_family_jack_monomial():
    code, d = run("family", "jack", "--partition", "[2]", "--basis", "m", "--json")
    assert code == 0
    (res,) = d["results"]
    f = SymFunc.from_json(res["value"])
    assert f.coefficient((2,)) == 1
    assert f.coefficient((1, 1)) == parse_scalar("2/(1+alpha)")


def test_family_empty_label(capsys):
    code, d = run("family", "hermite", "--partition", "[0]", "--format", "text")
    assert code == 0
    assert SymFunc.from_json(d["results"][0]["value"]) == 1
    assert "hermite[]" in capsys.readouterr().out


def test_family_parameters():
    code, d = run("family", "laguerre", "--partition", "[1]", "--param", "a=1/2", "--json")
    assert code == 0
    assert d["results"][0]["params"]["a"] == "1/2"


def test_verify_commutators_exit_zero():
    code, d = run("verify", "commutators", "--max-degree", "4", "--json")
    assert code == 0
    assert d["results"][0]["passed"]


def test_verify_ideals_and_hyper():
    assert run("verify", "ideals", "--n", "1", "--m", "1", "--max-weight", "4")[0] == 0
    assert run("verify", "hyper", "--degree", "4")[0] == 0


def test_conjecture_never_fails_the_exit_code():
    code, d = run("verify", "conjecture", "--max-weight", "3", "--json")
    assert code == 0
    assert d["verdicts"] and all(v["informational"] for v in d["verdicts"])


def test_failed_verdict_gives_exit_one():
    # the printed single-box Laguerre recurrence disagrees with the oracle
    code, d = run("pieri", "--family", "laguerre", "--partition", "[1]", "--json")
    assert code == 1
    assert any(not v["passed"] and not v["informational"] for v in d["verdicts"])


def test_pieri_hermite_passes():
    code, d = run("pieri", "--family", "hermite", "--partition", "[1]", "--json")
    assert code == 0
    assert {tuple(t["partition"]) for t in d["results"][0]["terms"]} == {(), (2,), (1, 1)}


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["family", "bessel", "--partition", "[1]"],
    ["family", "jack", "--partition", "[1,2]"],
    ["family", "jack", "--partition", "[2]", "--param", "zeta=1"],
    ["verify", "nonsense"],
    ["convert", "p[1] + m[1]"],
    ["family", "laguerre", "--partition", "[1]", "--param", "alpha=0"],
])
def test_usage_errors_exit_two(argv):
    code, d = cli.run(argv)
    assert code == 2 and d is None


def test_schema_keys():
    code, d = run("convert", "1/2 * p[1,1] + -1/2 * p[2]", "--to", "e", "--json")
    assert code == 0
    assert set(d) >= {"command", "params", "results", "verdicts", "elapsed_ms"}
    assert d["results"][0]["text"] == "1 * e[2]"


def test_super_verbs():
    code, d = run("super", "family", "jack", "--partition", "[2,2]", "--n", "1", "--m", "1", "--json")
    assert code == 0
    assert d["results"][0]["kernel"] is True
    code, _ = run("super", "--n", "1", "--m", "1", "verify", "intertwine", "--max-weight", "2")
    assert code == 0
    assert run("super", "verify", "duality", "--n", "1", "--m", "1", "--max-weight", "2")[0] == 0
    assert run("super", "series", "--n", "1", "--m", "0", "--degree", "2")[0] == 0


def test_hyper_and_limits_verbs():
    assert run("hyper", "check", "--which", "0F0", "--degree", "3")[0] == 0
    assert run("hyper", "series", "--a", "a", "--b", "q", "--degree", "2")[0] == 0
    assert run("limits", "jacobi_to_hermite", "--partition", "[1]")[0] == 0
    assert run("limits", "all", "--max-weight", "2")[0] == 0


def test_latex_output(capsys):
    run("family", "jack", "--partition", "[2]", "--basis", "m", "--format", "latex")
    out = capsys.readouterr().out
    assert "m_{2}" in out and "m_{1,1}" in out


def test_json_is_deterministic():
    argv = ["verify", "jack", "--max-weight", "3", "--json"]
    first, second = cms(*argv), cms(*argv)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    json.loads(first.stdout)


def test_timing_is_opt_in():
    code, d = run("verify", "jack", "--max-weight", "2", "--json")
    assert d["elapsed_ms"] == 0
    code, d = run("verify", "jack", "--max-weight", "2", "--json", "--timing")
    assert "elapsed_ms" in d["results"][0]


def test_format_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("CMS_FORMAT", "json")
    run("family", "jack", "--partition", "[1]")
    assert json.loads(capsys.readouterr().out)["results"]


def test_parallel_suites_match_serial():
    argv = ["verify", "all", "--max-weight", "2", "--degree", "2", "--n", "1", "--m", "1", "--json"]
    serial, parallel = cms(*argv), cms(*argv, "--jobs", "2")
    strip = lambda s: {k: v for k, v in json.loads(s).items() if k not in ("command", "params", "cache")}  # noqa: E731
    assert strip(serial.stdout) == strip(parallel.stdout)
