import sys
import os
import json

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.main import EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, main
from src.output.writers import read_csv


@pytest.fixture(autouse=True)
def isolated_config(monkeypatch, tmp_path):
    monkeypatch.setenv("CHAINCRAFT_CONFIG", str(tmp_path / "absent.json"))
    monkeypatch.delenv("CHAINCRAFT_THREADS", raising=False)


def run_json(capsys, argv):
    code = main(argv + ["--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def test_chain_csv_to_stdout(capsys):
    code = main(["chain", "--geometry", "flat", "--init", "0,0,0,1,1", "--xmax", "1"])
    assert code == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "x,y,p,yp,pp,delta,resid"
    assert lines[1].startswith("0.0,0.0,0.0,1.0,1.0,1.0,")


def test_chain_csv_to_file(tmp_path, capsys):
    out = tmp_path / "chain.csv"
    argv = ["chain", "--geometry", "flat", "--init", "0,0,0,1,1", "--xmax", "1", "--out", str(out)]
    assert main(argv) == EXIT_OK
    assert capsys.readouterr().out == ""
    table = read_csv(out)
    assert table.rows[-1][0] == pytest.approx(1.0)


def test_chain_of_cubic_expression_projects(capsys):
    code, doc = run_json(capsys, [
        "chain", "--expr", "(x*p-y)^3", "--init", "1,0,0,1,0.5", "--xmax", "1.2",
    ])
    assert code == EXIT_OK
    assert doc["command"] == "chain"
    assert doc["config"]["expr"] == "(x*p-y)^3"
    assert doc["summary"]["max_abs_resid"] < 1e-9


def test_chain_with_parameters(capsys):
    code, doc = run_json(capsys, [
        "chain", "--expr", "a*p^3", "--param", "a=0.5", "--init", "0,0,0,1,0", "--xmax", "0.5",
    ])
    assert code == EXIT_OK
    assert doc["config"]["params"] == {"a": 0.5}


def test_chain_of_quartic_reports_defect(capsys):
    code, doc = run_json(capsys, ["chain", "--expr", "p^4", "--init", "0,0,0,1,0", "--xmax", "0.5"])
    assert code == EXIT_OK
    assert doc["summary"]["max_abs_resid"] >= 0.1


@pytest.mark.parametrize("argv", [
    ["chain", "--expr", "p + * 2", "--init", "0,0,0,1,0", "--xmax", "1"],
    ["chain", "--expr", "q*p", "--init", "0,0,0,1,0", "--xmax", "1"],
    ["chain", "--geometry", "nosuch", "--init", "0,0,0,1,0", "--xmax", "1"],
    ["chain", "--geometry", "flat", "--expr", "p", "--init", "0,0,0,1,0", "--xmax", "1"],
    ["chain", "--geometry", "flat", "--init", "0,0,0,1", "--xmax", "1"],
    ["chain", "--geometry", "flat", "--init", "0,0,zero,1,0", "--xmax", "1"],
    ["chain", "--geometry", "flat", "--init", "0,0,0,1,0", "--xmax", "-1"],
    ["chain", "--geometry", "flat", "--param", "oops", "--init", "0,0,0,1,0", "--xmax", "1"],
    ["chain", "--geometry", "flat", "--init", "0,0,0,1,0"],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == EXIT_USAGE
    assert capsys.readouterr().err.startswith("chaincraft: ")


def test_help_describes_chain_command(capsys, monkeypatch):
    monkeypatch.setenv("COLUMNS", "200")
    assert main([]) == EXIT_USAGE
    out = capsys.readouterr().out
    assert "integrate the chain of a geometry as a graph over x" in out
    assert "y‴" not in out


def test_tangent_chain_start_is_usage_error(capsys):
    code = main(["chain", "--geometry", "flat", "--init", "0,0,1,1,0", "--xmax", "1"])
    assert code == EXIT_USAGE
    err = capsys.readouterr().err
    assert "--init" in err and "tangent" in err


def test_step_limit_is_numerical_failure(capsys):
    argv = ["chain", "--geometry", "flat", "--init", "0,0,0,1,1", "--xmax", "3"]
    code = main(argv + ["--method", "rk4", "--h", "0.01", "--max-steps", "5"])
    assert code == EXIT_NUMERICAL
    assert capsys.readouterr().out.startswith("x,y,p,yp,pp")


def test_tangent_geodesic_start_is_usage_error(capsys):
    code = main(["geodesic", "--geometry", "flat", "--init", "0,0,1,1,1,0"])
    assert code == EXIT_USAGE
    assert "tangent" in capsys.readouterr().err


def test_vertical_geodesic_is_rejected(capsys):
    code = main(["geodesic", "--geometry", "flat", "--init", "0,0,0,0,1,0"])
    assert code == EXIT_USAGE
    assert "non-vertical" in capsys.readouterr().err


def test_geodesic_cross_check(capsys):
    code, doc = run_json(capsys, [
        "geodesic", "--geometry", "flat", "--init", "0,0,0,1,1,1",
        "--t1", "1", "--x-stop", "0.5", "--cross-check",
    ])
    assert code == EXIT_OK
    assert doc["columns"][:5] == ["t", "x", "y", "p", "tau"]
    assert doc["columns"][-1] == "oracle_gap"
    assert doc["summary"]["cross_check_chain"] < 1e-6
    assert doc["summary"]["max_abs_nullity"] < 1e-8
    assert doc["config"]["cross_check"] is True


def test_homog_list(capsys):
    assert main(["homog", "--list"]) == EXIT_OK
    out = capsys.readouterr().out
    for name in ("flat-heisenberg", "flat-se2", "circles-se2", "hooke-sl2", "horocycle"):
        assert name in out


def test_homog_needs_model(capsys):
    assert main(["homog"]) == EXIT_USAGE
    assert main(["homog", "--model", "moebius"]) == EXIT_USAGE


def test_homog_hooke_compare(capsys):
    code, doc = run_json(capsys, ["homog", "--model", "hooke-sl2", "--c", "2", "--compare"])
    assert code == EXIT_OK
    assert doc["summary"]["sup_distance"] < 1e-7


def test_homog_circles_figure(tmp_path, capsys):
    svg = tmp_path / "circle.svg"
    code = main(["homog", "--model", "circles-se2", "--t1", "4", "--svg", str(svg)])
    assert code == EXIT_OK
    text = svg.read_text(encoding="utf-8")
    assert "<polyline " in text
    assert "<line " in text
    assert capsys.readouterr().out.startswith("t,theta,")


def test_homog_svg_to_stdout(capsys):
    code = main(["homog", "--model", "horocycle", "--c", "2", "--format", "svg"])
    assert code == EXIT_OK
    assert capsys.readouterr().out.startswith("<?xml")


def test_homog_horocycle_quartic(capsys):
    code, doc = run_json(capsys, ["homog", "--model", "horocycle", "--c", "2", "--samples", "100"])
    assert code == EXIT_OK
    assert len(doc["samples"]) == 100
    assert doc["summary"]["max_abs_quartic"] < 1e-9


def test_verify_selection(capsys):
    assert main(["verify", "--only", "horocycle"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("PASS  horocycle")


def test_verify_no_match(capsys):
    assert main(["verify", "--only", "nomatch"]) == EXIT_USAGE
    assert "matches no check" in capsys.readouterr().err


def test_verify_list(capsys):
    assert main(["verify", "--list"]) == EXIT_OK
    assert "infrastructure" in capsys.readouterr().out


def test_no_command_prints_help(capsys):
    assert main([]) == EXIT_USAGE
    assert "usage: chaincraft" in capsys.readouterr().out


def test_bad_option_is_usage_error(capsys):
    assert main(["chain", "--bogus"]) == EXIT_USAGE
