import json
from pathlib import Path

import pytest

from wapprox import cli
from wapprox.config import ConfigError, ExperimentConfig, load_config
from wapprox.report import VerdictReport

CONFIGS = Path(__file__).resolve().parent.parent / "configs"

BASE = {
    "weight": {"kind": "constant"},
    "zset": [-1.0, 1.0],
    "function": {"name": "monomial", "params": {"k": 2}},
    "r": [2],
    "n_ladder": [4, 8],
    "suites": ["modulus_properties"],
}


def write(tmp_path, **changes):
    cfg = dict(BASE, **changes)
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps(cfg))
    return p


def test_shipped_configs_load():
    for p in sorted(CONFIGS.glob("*.json")):
        cfg = load_config(p)
        assert cfg.suites


@pytest.mark.parametrize("changes", [
    {"suites": []},
    {"suites": ["nope"]},
    {"n_ladder": [8, 4]},
    {"n_ladder": [4, 4]},
    {"r": [0]},
    {"function": {"name": "unknown_function"}},
    {"weight": {"kind": "bogus"}},
    {"zset": [0.5, 0.2]},
    {"trials": 5},
    {"c1": 2.0, "c2": 1.0},
    {"grids": {"approx_grid": 64}, "n_ladder": [4, 16]},
    {"extra_key": 1},
])
def test_invalid_configs_exit_2(tmp_path, changes, capsys):
    p = write(tmp_path, **changes)
    assert cli.main(["verify", str(p), "--out", str(tmp_path / "o")]) == 2
    assert "config error" in capsys.readouterr().err


def test_missing_file_and_bad_json(tmp_path):
    assert cli.main(["verify", str(tmp_path / "absent.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.main(["verify", str(bad)]) == 2
    bad.write_text("[1, 2]")
    assert cli.main(["verify", str(bad)]) == 2


def test_argparse_errors_exit_2(tmp_path):
    p = write(tmp_path)
    assert cli.main(["verify", str(p), "--suite", "bogus"]) == 2
    assert cli.main(["frobnicate", str(p)]) == 2
    assert cli.main(["verify", str(p), "--grid-scale", "0"]) == 2


def test_polynomial_modulus_suite_passes(tmp_path):
    out = tmp_path / "o"
    assert cli.main(["verify", str(write(tmp_path)), "--out", str(out)]) == 0
    text = (out / "modulus_properties.csv").read_text()
    assert text.splitlines()[0] == "check,n,lhs,rhs,ratio,flag"
    assert json.loads((out / "modulus_properties.json").read_text())["pass"] is True


def test_failing_suite_exits_1(tmp_path, monkeypatch):
    def fake(cfg, suite, scale=1.0):
        rep = VerdictReport(suite)
        rep.add("c", 1, 2.0, 1.0, kind="inequality")
        return rep
    monkeypatch.setattr(cli, "run_suite", fake)
    assert cli.main(["verify", str(write(tmp_path)), "--out", str(tmp_path / "o")]) == 1
    assert json.loads((tmp_path / "o" / "modulus_properties.json").read_text())["pass"] is False


def test_check_weight(tmp_path):
    assert cli.main(["check-weight", str(write(tmp_path)), "--out", str(tmp_path / "o")]) == 0
    d = json.loads((tmp_path / "o" / "weight_class.json").read_text())
    assert d["astar_ladder"] == [1.0, 1.0, 1.0]
    p = write(tmp_path, weight={"kind": "custom_callable", "name": "piecewise_nonexample"})
    assert cli.main(["check-weight", str(p), "--out", str(tmp_path / "o2")]) == 1


def test_approx_and_modulus_commands(tmp_path):
    p = write(tmp_path, function={"name": "power_abs", "params": {"alpha": 1.0}}, zset=[-1.0, 0.0, 1.0])
    assert cli.main(["approx", str(p), "--out", str(tmp_path / "o")]) == 0
    rows = (tmp_path / "o" / "approx.csv").read_text().splitlines()
    assert rows[0] == "n,grid,error,alternations,method"
    assert cli.main(["modulus", str(p), "--out", str(tmp_path / "o")]) == 0
    recs = json.loads((tmp_path / "o" / "modulus.json").read_text())
    assert {r["modulus"] for r in recs} == {"main_part", "complete", "ditzian_totik", "mastroianni_totik"}


def test_seed_and_out_override(tmp_path):
    p = write(tmp_path, suites=["polynomial_inequalities"], poly_weights=["constant"], poly_ladder=[8, 16])
    a, b = tmp_path / "a", tmp_path / "b"
    assert cli.main(["verify", str(p), "--out", str(a), "--seed", "3"]) == 0
    assert cli.main(["verify", str(p), "--out", str(b), "--seed", "3"]) == 0
    assert (a / "polynomial_inequalities.csv").read_bytes() == (b / "polynomial_inequalities.csv").read_bytes()
    rep = json.loads((a / "polynomial_inequalities.json").read_text())
    assert rep["inputs"]["config"]["seed"] == 3


def test_config_roundtrip():
    cfg = ExperimentConfig.from_dict(dict(BASE))
    assert ExperimentConfig.from_dict(cfg.to_dict()).to_dict() == cfg.to_dict()
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"weight": {"kind": "constant"}})


def test_grid_scale_checked_against_ladder(tmp_path):
    p = write(tmp_path, n_ladder=[4, 64])
    assert cli.main(["verify", str(p), "--grid-scale", "0.1", "--out", str(tmp_path / "o")]) == 2
