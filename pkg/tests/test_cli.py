import io
import json
import subprocess
import sys

import pytest

from ktate import __version__
from ktate.cli import parse_text, run, to_text, verify_all


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_borel_homology_json():
    code, out, _ = call("borel-homology", "--p", "2", "--n", "3", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["exact"] is True and rep["version"] == __version__
    assert rep["request"] == {"command": "borel-homology", "p": 2, "n": 3, "method": "closed"}
    syms = [t["symbol"] for t in rep["result"]["terms"]]
    assert syms == ["k", "M", "H"]


def test_tate_zero():
    code, out, _ = call("tate", "--p", "2", "--n", "0", "--format", "json")
    assert code == 0
    res = json.loads(out)["result"]
    assert res["q_multiplicity"]["num"] == {} and res["f_hom"]["num"] == {}


def test_bg_check():
    code, out, _ = call("bg-check", "--r-max", "10", "--format", "json")
    assert code == 0
    reports = json.loads(out)["result"]
    assert [r["r"] for r in reports] == list(range(2, 11))


@pytest.mark.parametrize(
    "argv",
    [
        ["borel-homology", "--p", "4"],
        ["homotopy", "--degrees", "5:1"],
        ["tate", "--bogus"],
        ["tor", "--a", "X", "--b", "M"],
        ["bg-check", "--r", "1"],
        [],
    ],
)
def test_usage_errors(argv):
    code, _, _ = call(*argv)
    assert code == 2


def test_text_json_roundtrip():
    for argv in (
        ["borel-cohomology", "--p", "3", "--n", "2"],
        ["tate", "--p", "2", "--n", "3"],
        ["homotopy", "--p", "3", "--n", "2", "--degrees", "-4:6"],
        ["tor", "--a", "M", "--b", "M", "--j", "1", "--degrees", "0:10"],
        ["bg-check", "--r", "3"],
        ["verify-all", "--n-max", "1", "--degrees", "0:0"],
    ):
        c1, text, _ = call(*argv, "--format", "text")
        c2, js, _ = call(*argv, "--format", "json")
        assert c1 == c2
        assert parse_text(text) == json.loads(js)


def test_json_is_deterministic():
    a = call("verify-all", "--n-max", "2", "--format", "json")[1]
    b = call("verify-all", "--n-max", "2", "--format", "json")[1]
    assert a == b


def test_text_format_helpers():
    rep = {"a": {"b": [1, {"c": "x"}], "e": {}}, "f": [], "g": None}
    text = to_text(rep, ["comment"])
    assert text.startswith("# comment\n")
    assert parse_text(text) == rep


def test_verify_all_defaults():
    res = verify_all()
    assert res["ok"], res["failed"]
    assert len(res["suites"]["table_rows"]) == 9


def test_verify_all_degenerate():
    res = verify_all(window=(0, 0))
    assert res["ok"]
    assert all(r["status"] == "WindowTooWide" for r in res["suites"]["table_rows"])
    res = verify_all(n_max=0)
    assert res["ok"] and res["suites"]["bg"] == []


def test_verify_all_reports_failures(monkeypatch):
    import ktate.cli as cli

    monkeypatch.setattr(cli, "consistency_check", lambda p, n: n != 1)
    res = cli.verify_all(primes=(2,), n_max=2)
    assert not res["ok"]
    assert res["failed"] == ["tate_consistency: p=2 n=1"]
    code, _, _ = call("verify-all", "--p-max", "2", "--n-max", "2")
    assert code == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ktate", "tor", "--a", "M", "--b", "N", "--j", "1", "--format", "json"],
        capture_output=True, text=True, check=True,
    )
    rep = json.loads(proc.stdout)
    assert all(d["torsion"] == [] and d["free"] == 0 for d in rep["result"]["degrees"])
