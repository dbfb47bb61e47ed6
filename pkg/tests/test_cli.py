"""End-to-end command-line checks, including the exit-code contract."""

import json
import os

import pytest

from leavitt.cli import main

from .conftest import graph_path


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_plain(capsys):
    code, out, err = run(capsys, "analyze", graph_path("toeplitz"))
    assert code == 0
    assert "sinks: v2" in out
    assert "polynomial growth: True" in out


def test_analyze_chain_json(capsys):
    code, out, err = run(capsys, "analyze", graph_path("toeplitz"), "--chain", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["chain"]["s"] == 1
    assert doc["chain"]["layers"][0][0]["kind"] == "MatInfOverF"
    assert doc["V0"] == ["v2"]


def test_analyze_deterministic(capsys):
    first = run(capsys, "analyze", graph_path("two_loops"), "--chain", "--json")
    second = run(capsys, "analyze", graph_path("two_loops"), "--chain", "--json")
    assert first == second


def test_analyze_growth_violation(capsys):
    code, out, err = run(capsys, "analyze", graph_path("bad_growth"), "--chain")
    assert code == 3
    assert "intersect" in err


def test_analyze_missing_file(capsys):
    code, out, err = run(capsys, "analyze", "no_such_graph.json")
    assert code == 2


def test_calc_bindings(capsys):
    code, out, err = run(
        capsys,
        "calc",
        graph_path("toeplitz"),
        "a = c c'",
        "a - v1",
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "a = v1 - f f'"
    assert lines[1] == "- f f'"


def test_calc_star_flag(capsys):
    code, out, err = run(capsys, "calc", graph_path("toeplitz"), "c f", "--star")
    assert code == 0
    assert out.strip() == "f' c'"


def test_calc_field_mismatch(capsys):
    code, out, err = run(
        capsys, "calc", graph_path("loop"), "x+1 c", "--field", "gf5"
    )
    assert code == 2  # gf5 cannot parse a polynomial literal
    code, out, err = run(
        capsys, "calc", graph_path("loop"), "x+1 c", "--field", "gf2^2"
    )
    assert code == 0


def test_calc_syntax_error(capsys):
    code, out, err = run(capsys, "calc", graph_path("loop"), "c + + c")
    assert code == 2


def test_calc_bad_field(capsys):
    code, out, err = run(capsys, "calc", graph_path("loop"), "c", "--field", "gf6")
    assert code == 4


def test_toeplitz_units(capsys):
    code, out, err = run(capsys, "toeplitz", "units", "2", "3")
    assert code == 0
    assert "y (1 - y x) x x" in out


def test_toeplitz_probe_json(capsys):
    code, out, err = run(capsys, "toeplitz", "probe", "-n", "5", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "dimension_contradiction"
    assert doc["corner_dims"] == [1, 2, 3, 4, 5, 6]


def test_toeplitz_aut_apply(tmp_path, capsys):
    f = tmp_path / "phi.json"
    f.write_text(json.dumps({"alpha": "1", "g": {"finitary": [[1, 2, "1"]]}}))
    code, out, err = run(capsys, "toeplitz", "aut", str(f), "--apply", "e 1 1")
    assert code == 0
    assert "(1, 2)" in out


def test_toeplitz_aut_compose(tmp_path, capsys):
    f = tmp_path / "phi.json"
    h = tmp_path / "psi.json"
    f.write_text(json.dumps({"alpha": "1", "g": {"finitary": [[1, 2, "1"]]}}))
    h.write_text(json.dumps({"alpha": "3", "g": {"finitary": []}}))
    code, out, err = run(
        capsys, "toeplitz", "aut", str(f), str(h), "--compose", "--json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["alpha"] == "3"


def test_toeplitz_involution(tmp_path, capsys):
    f = tmp_path / "T.json"
    f.write_text(
        json.dumps(
            {
                "T": {
                    "finitary": [[1, 2, "1"], [2, 1, "1"], [2, 2, "1"]],
                    "band": [[0, "1"]],
                }
            }
        )
    )
    code, out, err = run(capsys, "toeplitz", "involution", str(f))
    assert code == 0
    assert "Q^t Q = T holds" in out


def test_toeplitz_involution_capability_failure(tmp_path, capsys):
    f = tmp_path / "T.json"
    f.write_text(json.dumps({"T": {"finitary": [], "band": [[0, "2"]]}}))
    code, out, err = run(
        capsys, "toeplitz", "involution", str(f), "--field", "Q"
    )
    assert code == 5
    assert "square root" in err
