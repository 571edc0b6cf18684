import json
import subprocess
import sys
from pathlib import Path

import pytest

from concordia import cli, corpus
from concordia.family import FamilyCertificate
from concordia.link import parse_pd

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.mark.parametrize("name", corpus.names())
@pytest.mark.parametrize("cmd", ["invariants", "classify"])
def test_golden(capsys, name, cmd):
    code, report = run(capsys, cmd, corpus.path(name))
    assert code == 0
    expected = json.loads((GOLDEN / f"{name}.{cmd}.json").read_text())
    assert report["results"] == expected
    assert report["command"] == cmd and "timing_seconds" not in report


def test_invariant_anchors(capsys):
    _, r = run(capsys, "invariants", corpus.path("hopf"))
    res = r["results"]
    assert res["alexander_polynomial"] == "1"
    assert res["linking_matrix"] == [[0, 1], [1, 0]]
    assert res["pi2_mod_pi3"] == "0"
    _, r = run(capsys, "invariants", corpus.path("borromean"))
    assert r["results"]["alexander_at_one"] == 0 and r["results"]["pi2_mod_pi3"] == "Z^3"
    _, r = run(capsys, "invariants", corpus.path("trefoil"))
    assert r["results"]["alexander_polynomial"] == "x1^2 - x1 + 1"


def test_deterministic_bytes():
    args = [sys.executable, "-m", "concordia", "invariants", str(corpus.path("t2_6"))]
    a = subprocess.run(args, capture_output=True, check=True).stdout
    b = subprocess.run(args, capture_output=True, check=True).stdout
    assert a == b


def test_timing_flag(capsys):
    _, r = run(capsys, "--timing", "classify", corpus.path("hopf"))
    assert r["timing_seconds"] >= 0


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.pd"
    bad.write_text("PD[X[1,2,3,4],\n  X[1,2,3]]\n")
    code, r = run(capsys, "invariants", bad)
    assert code == 2
    assert r["error"]["line"] == 2 and r["error"]["type"] == "MalformedPD"


def test_missing_file_exit_code(capsys, tmp_path):
    code, r = run(capsys, "classify", tmp_path / "nope.pd")
    assert code == 2


def test_precondition_exit_codes(capsys):
    code, r = run(capsys, "family", corpus.path("hopf"), "--R", "1")
    assert code == 3
    code, r = run(capsys, "signature", "--builtin", "trefoil_rh", "--rho", "4")
    assert code == 3 and r["error"]["type"] == "NotPrime"
    code, r = run(capsys, "signature", "--builtin", "nonsense")
    assert code == 3


def test_internal_error_exit_code(capsys, monkeypatch):
    def boom(d):
        raise RuntimeError("unexpected")
    monkeypatch.setattr(cli, "classify", boom)
    code, r = run(capsys, "classify", corpus.path("hopf"))
    assert code == 4 and r["error"]["type"] == "RuntimeError"


def test_family_command(capsys, tmp_path):
    out = tmp_path / "cert.json"
    code, r = run(capsys, "family", corpus.path("t2_6"), "--R", "100", "--count", "5",
                  "--out", out)
    assert code == 0
    cert = FamilyCertificate.from_json(out.read_text())
    assert cert.config.p == 3 and cert.certified and cert.reverify()
    assert r["results"]["certificate"]["adjusted"]
    code, r = run(capsys, "family", corpus.path("trefoil_hopf"), "--R", "10", "--N", "2",
                  "--count", "4")
    assert code == 0
    assert [m["k"] for m in r["results"]["certificate"]["members"]] == [8, 24, 56, 120]


def test_infect_command(capsys, tmp_path):
    out = tmp_path / "infected.pd"
    code, r = run(capsys, "infect", corpus.path("t2_6"), "--pattern", "trefoil", "--verify",
                  "--out", out)
    assert code == 0
    res = r["results"]
    assert res["verification"]["passed"] and res["crossings_after"] == 24
    assert parse_pd(out.read_text()).m == 2
    code, r = run(capsys, "infect", corpus.path("hopf"))
    assert code == 3


def test_signature_command(capsys, tmp_path):
    svg = tmp_path / "t.svg"
    code, r = run(capsys, "signature", "--builtin", "trefoil_rh", "--plot", svg, "--rho", "3",
                  "--rho-integral")
    res = r["results"]
    assert code == 0
    assert res["jumps"] == ["1/6", "5/6"]
    assert res["rho_integral"]["value"] == {"num": 4, "den": 3}
    assert res["rho_zp"]["value"] == {"num": 4, "den": 3}
    assert svg.read_text().startswith("<svg")


def test_signature_from_file(capsys, tmp_path):
    m = tmp_path / "v.txt"
    m.write_text("1 1\n0 -1\n")
    csv = tmp_path / "p.csv"
    code, r = run(capsys, "signature", m, "--omega", "1/3", "--csv", csv)
    assert code == 0 and r["results"]["signature"] == {"1/3": 0}
    assert csv.read_text().startswith("start_turn")
    m.write_text("1 0\n0 1\n")
    code, r = run(capsys, "signature", m)
    assert code == 2


def test_corpus_env_override(tmp_path, monkeypatch):
    (tmp_path / "x.pd").write_text("PD[]\nComponents[[1]]\n")
    monkeypatch.setenv("CONCORDIA_CORPUS", str(tmp_path))
    assert corpus.names() == ["x"]
    assert corpus.load("x").m == 1
    with pytest.raises(FileNotFoundError):
        corpus.path("hopf")
