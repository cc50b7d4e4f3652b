from __future__ import annotations

import json
import math
import xml.etree.ElementTree as ET

import pytest

from edgesub import cli
from edgesub.cli import CONFIG_ENV, EXIT_CODES, RunConfig, load_config, main
from edgesub.counting import sample_size
from edgesub.errors import ParseError, UsageError
from edgesub.graphs import complete, format_edge_list
from edgesub.verify import Check


@pytest.fixture
def graphs(tmp_path):
    paths = {}
    for n in (3, 4, 7):
        p = tmp_path / f"k{n}.txt"
        p.write_text(format_edge_list(complete(n)))
        paths[f"k{n}"] = str(p)
    bad = tmp_path / "bad.txt"
    bad.write_text("3 2\n0 1\n")
    paths["bad"] = str(bad)
    return paths


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


# ---------------------------------------------------------------- count

def test_count_forest(capsys, graphs):
    res = run_json(capsys, "count", "forest", 2, graphs["k3"])
    assert res["value"] == 3
    assert res["citations"] and res["seed"] == 0
    assert len(res["config_hash"]) == 16


@pytest.mark.parametrize("mode", ["brute", "via-subs", "via-basis"])
def test_count_connected_modes(capsys, graphs, mode):
    res = run_json(capsys, "count", "connected", 3, graphs["k4"], "--mode", mode)
    assert res["value"] == 20 and res["mode"] == mode


def test_count_fptras_record(capsys, graphs):
    res = run_json(capsys, "count", "planar", 4, graphs["k7"], "--mode", "fptras",
                   "--eps", 0.2, "--delta", 0.1, "--seed", 7)
    assert res["path"] == "sampling" and res["seed"] == 7
    assert res["samples"] == sample_size(4, 0.2, 0.1) == 1088575
    num, den = map(int, res["estimate"].split("/"))
    assert math.isclose(res["estimate_rounded"], num / den, abs_tol=1e-3)
    assert "Algorithm 1" in res["citations"]
    again = run_json(capsys, "count", "planar", 4, graphs["k7"], "--mode", "fptras",
                     "--seed", 7)
    assert again["estimate"] == res["estimate"]


def test_decide(capsys, graphs):
    res = run_json(capsys, "decide", "matching", 2, graphs["k4"])
    assert res["value"] is True and res["branch"] == "matching"
    assert res["citations"] == ["Thm 1.6", "Lemma 6.4"]


# ---------------------------------------------------------------- coeff

def test_coeff_torus_residue(capsys):
    res = run_json(capsys, "coeff", "connected", "torus:5", "--mod", 5)
    assert res["residue"] == 1
    assert res["verdict"] == "#W[1]-hard criterion met"
    assert "Thm 1.7" in res["citations"]


def test_coeff_tables(capsys):
    res = run_json(capsys, "coeff", "trivially-true", "k3")
    assert res["top"] == 0 and res["fractures"] == 8
    res = run_json(capsys, "coeff", "matching", "k3")
    assert res["bottom"] == 1
    res = run_json(capsys, "coeff", "planar", "k3")
    assert res["classification"]["exact"]["tag"] == "#W[1]-hard"


def test_coeff_mod_needs_matching_torus(capsys):
    code, out, err = run(capsys, "coeff", "connected", "torus:5", "--mod", 3)
    assert code == EXIT_CODES["usage"] and out == "" and "torus" in err


# ---------------------------------------------------------------- tutte

def test_tutte_examples(capsys, graphs):
    res = run_json(capsys, "tutte", graphs["k3"], 2, "2/1", "1/1")
    assert res["value"] == "3/1" and res["interpretation"] == "k-forests"
    res = run_json(capsys, "tutte", graphs["k3"], 1, "2/1", "2/1", "--classify")
    assert res["classification"]["exact"] == "polynomial (hyperbola)"
    assert res["value"] == "3/1"


def test_tutte_classification_without_graph(capsys, tmp_path):
    res = run_json(capsys, "tutte", tmp_path / "anything", 3, "1/1", "5/1", "--classify")
    assert res["classification"]["exact"].startswith("FPT, #P-hard")
    assert res["value"] is None


@pytest.mark.parametrize("mode", ["brute", "delcon", "auto"])
def test_tutte_modes_agree(capsys, graphs, mode):
    res = run_json(capsys, "tutte", graphs["k4"], 3, "3", "-2", "--mode", mode)
    brute = run_json(capsys, "tutte", graphs["k4"], 3, "3", "-2", "--mode", "brute")
    assert res["value"] == brute["value"]


def test_tutte_bad_rational(capsys, graphs):
    code, out, err = run(capsys, "tutte", graphs["k3"], 1, "one/half", "1")
    assert code == EXIT_CODES["usage"] and out == "" and "bad rational" in err
    # decimal strings are read exactly
    assert run_json(capsys, "tutte", graphs["k3"], 1, "0.5", "1")["query"]["x"] == "1/2"


def test_tutte_map_svg(capsys, tmp_path):
    svg = tmp_path / "map.svg"
    res = run_json(capsys, "tutte-map", "--lo", -1, "--hi", 2, "--svg", svg)
    assert len(res["points"]) == 7 * 7
    assert {"x": "1", "y": "1", "exact": "polynomial", "approx": "FPRAS"} in res["points"]
    assert ET.parse(svg).getroot().tag.endswith("svg")


# --------------------------------------------------------------- verify

def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "fixed-points", "--ell", 3)
    res = json.loads(out)
    assert code == 0 and res["passed"]
    assert any("15" in c["detail"] for c in res["checks"])
    assert {c["citation"] for c in res["checks"]} == {"Obs. 4.2"}


def test_verify_table_format(capsys):
    code, out, _ = run(capsys, "verify", "point-grid", "--format", "table")
    assert code == 0
    assert out.splitlines()[-1].startswith("PASS  point-grid")


def test_verify_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli, "run_suite", lambda name, **kw: [Check("broken", False, "x")])
    code, out, _ = run(capsys, "verify", "residues")
    assert code == EXIT_CODES["check-failed"]
    assert json.loads(out)["passed"] is False


# ---------------------------------------------------------- exit codes

def test_parse_error_exit(capsys, graphs, tmp_path):
    code, out, err = run(capsys, "count", "forest", 2, graphs["bad"])
    assert code == EXIT_CODES["parse"] and out == "" and "parse error" in err
    code, _, _ = run(capsys, "count", "forest", 2, tmp_path / "missing.txt")
    assert code == EXIT_CODES["parse"]


def test_capacity_exit(capsys, graphs):
    code, out, err = run(capsys, "count", "forest", 3, graphs["k7"], "--budget-subsets", 10)
    assert code == EXIT_CODES["capacity"] and out == "" and "capacity" in err


def test_usage_exits(capsys, graphs):
    assert run(capsys, "count", "no-such-property", 2, graphs["k3"])[0] == EXIT_CODES["usage"]
    with pytest.raises(SystemExit) as exc:
        main(["count", "forest"])
    assert exc.value.code == EXIT_CODES["usage"]
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == EXIT_CODES["usage"]


# --------------------------------------------------------------- config

def test_config_from_env(capsys, graphs, tmp_path, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seed": 11, "format": "table"}))
    monkeypatch.setenv(CONFIG_ENV, str(cfg))
    code, out, _ = run(capsys, "count", "forest", 2, graphs["k3"])
    assert code == 0
    rows = dict(line.split(None, 1) for line in out.splitlines())
    assert rows["value"] == "3" and rows["seed"] == "11"
    assert rows["config_hash"] == RunConfig(seed=11, format="table").digest()


def test_flags_override_config(capsys, graphs, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seed": 11}))
    res = run_json(capsys, "count", "forest", 2, graphs["k3"], "--config", cfg, "--seed", 12)
    assert res["seed"] == 12
    assert res["config_hash"] == RunConfig(seed=12).digest() != RunConfig(seed=11).digest()


def test_config_validation(tmp_path):
    with pytest.raises(UsageError):
        RunConfig(seed=-1)
    with pytest.raises(UsageError):
        RunConfig(subset_budget=0)
    with pytest.raises(UsageError):
        RunConfig(format="xml")
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(ParseError):
        load_config(str(bad))
    bad.write_text(json.dumps({"colour": "red"}))
    with pytest.raises(UsageError):
        load_config(str(bad))
    with pytest.raises(UsageError):
        load_config(str(tmp_path / "nope.json"))
    assert load_config(None) == RunConfig()


def test_custom_property_file(capsys, graphs, tmp_path):
    props = tmp_path / "props.json"
    props.write_text(json.dumps({"properties": [
        {"name": "k3-minor-free", "forbidden_minors": [[[0, 1], [0, 2], [1, 2]]]}]}))
    res = run_json(capsys, "count", "k3-minor-free", 2, graphs["k4"], "--properties", props)
    # every pair of edges of K4 is acyclic
    assert res["value"] == math.comb(6, 2)
