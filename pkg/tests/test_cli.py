from __future__ import annotations

import io
import json

import pytest

from mechsynth.cli import EXIT_INTERNAL, EXIT_OK, EXIT_REJECT, EXIT_USAGE, run
from mechsynth.exactalg import CoefficientVector as CV
from mechsynth.netmodel import dumps_netlist, loads_netlist, to_netlist_dict
from mechsynth.oneport.theorem6 import synth_fig3


def call(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def structured(*argv: str) -> tuple[int, list[dict]]:
    code, out, _ = call("--format", "structured", *argv)
    return code, [json.loads(line) for line in out.splitlines() if line]


@pytest.fixture
def fig3e(tmp_path):
    path = tmp_path / "fig3e.netlist"
    path.write_text(dumps_netlist(synth_fig3(CV.of((1, 2, 2, 3), (1, 1, 2), beta4=0), 5)))
    return str(path)


def test_resistive3_synth():
    code, recs = structured("resistive3-synth", "--matrix", "[[1,1,0],[1,2,-1],[0,-1,1]]")
    assert code == EXIT_OK
    assert recs[0]["branch"] == "LTree" and recs[0]["verified"] is True
    assert len(recs[0]["netlist"]["elements"]) == 2


def test_resistive3_reject():
    code, recs = structured("resistive3-synth", "--matrix", "[[3,1,1],[1,3,1],[1,1,3]]")
    assert code == EXIT_REJECT and recs[0]["result"] == "rejected"


def test_paramount_check():
    assert call("paramount-check", "--matrix", "[[1,1,0],[1,2,-1],[0,-1,1]]")[0] == EXIT_OK
    assert call("paramount-check", "--matrix", "[[1,2,0],[2,1,0],[0,0,1]]")[0] == EXIT_REJECT


def test_oneport_classify():
    code, out, _ = call("oneport-classify", "--num", "1,2,2,3", "--den", "0,1,1,2", "--mode", "scale-search")
    assert code == EXIT_OK and "Theorem 6 Condition 5, λ=1" in out


def test_oneport_classify_quartic():
    code, recs = structured("oneport-classify", "--num", "1,1,2,2", "--den", "1,2,3,5")
    assert code == EXIT_OK and recs[0]["result"].startswith("Theorem 5 Cond1")


def test_oneport_synth():
    code, recs = structured("oneport-synth", "--num", "1,1,2,2", "--den", "1,2,3,5")
    assert code == EXIT_OK and recs[0]["verified"] is True
    net = loads_netlist(json.dumps(recs[0]["netlist"]))
    assert net.census()["spring"] <= 3


def test_oneport_synth_scaled_leading():
    # b4 = 2 is divided out
    code, recs = structured("oneport-synth", "--num", "2,2,4,4", "--den", "2,4,6,10")
    assert code == EXIT_OK


def test_oneport_as_written_reject():
    code, _, _ = call("oneport-classify", "--num", "2,4,4,6", "--den", "0,2,2,4", "--mode", "as-written")
    assert code == EXIT_REJECT


def test_verify(fig3e):
    code, out, _ = call("verify", "--netlist", fig3e, "--admittance", "(s^3+2s^2+2s+3)/(s^3+s^2+2s)")
    assert code == EXIT_OK and "exact match" in out
    code, out, _ = call("verify", "--netlist", fig3e, "--admittance", "(s^3+2s^2+2s+3)/(s^3+s^2+3s)")
    assert code == EXIT_REJECT and "mismatch" in out


def test_verify_matrix(tmp_path):
    _, recs = structured("resistive3-synth", "--matrix", "[[1,1,0],[1,2,-1],[0,-1,1]]")
    path = tmp_path / "r.netlist"
    path.write_text(json.dumps(recs[0]["netlist"]))
    assert call("verify", "--netlist", str(path), "--matrix", "[[1,1,0],[1,2,-1],[0,-1,1]]")[0] == EXIT_OK


def test_region_map(tmp_path):
    code, out, _ = call("region-map", "--grid", "5")
    lines = out.splitlines()
    assert code == EXIT_OK and lines[0] == "g5,g6,class,witness" and len(lines) == 26
    path = tmp_path / "map.csv"
    assert call("region-map", "--grid", "3", "--output", str(path))[0] == EXIT_OK
    assert path.read_text().count("\n") == 10


@pytest.mark.parametrize("argv", [
    ("paramount-check", "--matrix", "[[1.0,0,0],[0,1,0],[0,0,1]]"),
    ("oneport-classify", "--num", "1,2,2", "--den", "0,1,1,2"),
    ("oneport-classify", "--num", "0.5,2,2,3", "--den", "0,1,1,2"),
    ("region-map", "--grid", "1"),
    ("region-map", "--lo", "1", "--hi", "0"),
    ("verify", "--netlist", "/nonexistent", "--admittance", "1/s"),
    ("no-such-command",),
])
def test_usage_errors(argv):
    code, _, err = call(*argv)
    assert code == EXIT_USAGE


def test_internal_error(monkeypatch):
    from mechsynth import cli
    from mechsynth.errors import OracleMismatch

    def boom(M):
        raise OracleMismatch("forced")

    monkeypatch.setattr(cli, "theorem1", boom)
    code, _, err = call("resistive3-synth", "--matrix", "[[1,0,0],[0,1,0],[0,0,1]]")
    assert code == EXIT_INTERNAL and "forced" in err


def test_enumerate_oracle_small():
    code, recs = structured("enumerate-oracle", "--max-elements", "2", "--max-vertices", "5", "--valuations", "2")
    assert code == EXIT_OK and recs[0]["counterexamples"] == 0


def test_deterministic():
    a = call("resistive3-synth", "--matrix", "[[1,1,1],[1,1,1],[1,1,1]]")
    b = call("resistive3-synth", "--matrix", "[[1,1,1],[1,1,1],[1,1,1]]")
    assert a == b
