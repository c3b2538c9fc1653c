import argparse
import json
from pathlib import Path

import pytest

from alcove.cli import load_config, main


@pytest.fixture(autouse=True)
def isolated(tmp_path, monkeypatch):
    monkeypatch.setenv("XDG_CONFIG_HOME", str(tmp_path / "xdg"))
    monkeypatch.setenv("ALCOVE_CACHE_DIR", str(tmp_path / "cache"))
    for var in ("ALCOVE_MAXLEN", "ALCOVE_FORMAT", "ALCOVE_SEED"):
        monkeypatch.delenv(var, raising=False)


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def run_json(capsys, *argv):
    rc, out, err = run(capsys, *argv)
    assert rc == 0, err
    return json.loads(out)


def test_rootsys_info(capsys):
    obj = run_json(capsys, "rootsys", "info", "B2")
    assert obj["N"] == 4 and obj["h"] == 4
    assert list(obj) == ["type", "N", "h", "positive_roots", "cartan"]
    assert run_json(capsys, "rootsys", "info", "E8")["N"] == 120
    rc, _, err = run(capsys, "rootsys", "info", "Z9")
    assert rc == 2 and "Z9" in err


def test_weyl_dim(capsys):
    assert run_json(capsys, "weyl-dim", "B2", "1,1") == 1
    assert run_json(capsys, "weyl-dim", "B2", "2,2") == 16
    assert run_json(capsys, "weyl-dim", "B2", "2,1") == 5
    assert run_json(capsys, "weyl-dim", "B2", "1,0", "--unshifted") == 5
    assert run(capsys, "weyl-dim", "B2", "0,1")[0] == 2
    assert run(capsys, "weyl-dim", "B2", "x,1")[0] == 2


def test_b2_block(capsys):
    obj = run_json(capsys, "b2", "block", "--p", "5", "--base", "1,1")
    assert obj["dims"] == [25, 125, 225, 100]
    assert obj["deltas"] == [25, 150, 350, 225]
    assert obj["premet"] is True
    assert obj["pattern"] == [[1, 0, 0, 0], [-1, 1, 0, 0], [1, -1, 1, 0], [1, -1, 0, 1]]
    assert obj["linked"]["C"] == [1, 7]
    assert run_json(capsys, "b2", "block", "--p", "7", "--base", "1,1")["dims"] == [98, 343, 1274, 245]
    rc, _, err = run(capsys, "b2", "block", "--p", "5", "--base", "2,2")
    assert rc == 2 and "lowest alcove" in err


def test_b2_min(capsys):
    assert run_json(capsys, "b2", "min", "--p", "5") == {"min": 25, "weights": [[1, 1], [1, 2]]}
    assert run_json(capsys, "b2", "min", "--p", "7") == {"min": 49, "weights": [[2, 1], [2, 2]]}
    rc, _, err = run(capsys, "b2", "min", "--p", "3")
    assert rc == 2 and "p >= h" in err


def test_b2_delta(capsys):
    assert run_json(capsys, "b2", "delta", "--p", "5", "--weight", "1,1") == -25
    assert run_json(capsys, "b2", "delta", "--p", "5", "--weight", "3,6", "--cell") == 25


def test_configs(capsys):
    assert ["A7", "E7"] in run_json(capsys, "configs", "E8", "--target", "91")
    assert ["A1", "A1"] in run_json(capsys, "configs", "B2", "--target", "2")
    assert run_json(capsys, "configs", "A3", "--target", "5") == []


def test_formula_round_trip(capsys):
    f = {"factors": [{"a": [0, 1], "k": 0}, {"a": [2, 1], "k": -1}], "d": 2, "den": 2}
    obj = run_json(capsys, "formula", json.dumps(f), "--weight", "3,1", "--p", "5")
    assert obj == {"formula": f, "value": 25}
    assert run(capsys, "formula", "{not json", "--weight", "1,1", "--p", "5")[0] == 2


def test_formula_inexact_is_error(capsys):
    f = {"factors": [{"a": [1, 0], "k": 0}], "d": 0, "den": 2}
    rc, _, err = run(capsys, "formula", json.dumps(f), "--weight", "3,1", "--p", "5")
    assert rc == 2 and "3/2" in err


def test_registry(capsys):
    recs = run_json(capsys, "registry")
    e8 = next(r for r in recs if r["type"] == "E8" and r["orbit"] == "minimal")
    assert (e8["N"], e8["d"]) == (120, 29)


def test_kl(capsys):
    assert run(capsys, "--format", "plain", "kl", "affB2", "--y", "1", "--w", "1")[1].strip() == "1"
    assert run(capsys, "kl", "finB2", "--y", "e", "--w", "1-2-1-2", "--format", "plain")[1].strip() == "1"
    obj = run_json(capsys, "kl", "affB2", "--y", "e", "--w", "1-0-1-2-1-0")
    assert obj["P"] == [1, 1] and obj["mu"] == 0
    assert run(capsys, "kl", "affB3", "--y", "e", "--w", "9")[0] == 2


def test_kl_table_and_cells(capsys, tmp_path):
    obj = run_json(capsys, "kl-table", "affB2", "--maxlen", "5")
    path = Path(obj["cache"])
    assert path.parent == tmp_path / "cache"
    assert path.read_text().startswith("klcache v1 affB2\n")
    cells = run_json(capsys, "cells", "affB2", "--maxlen", "6")
    assert cells["maxlen"] == 6 and cells["truncated"]
    assert {"elements": ["e"], "stable": True} in cells["components"]
    assert run(capsys, "cells", "affB2", "--maxlen", "13")[0] == 2


def test_plot(capsys, tmp_path):
    out = tmp_path / "fig1.svg"
    assert run(capsys, "plot", "fig1", "--p", "5", "-o", str(out))[0] == 0
    assert out.read_text().startswith("<?xml")
    assert run(capsys, "plot", "fig1", "--p", "4", "-o", str(out))[0] == 2
    assert run(capsys, "plot", "fig2", "--p", "5", "-o", str(tmp_path / "nope" / "x.svg"))[0] == 3


def test_verify(capsys):
    rc, out, _ = run(capsys, "verify", "b2", "--p", "5,7")
    assert rc == 0 and "[PASS]" in out and "checks passed" in out
    assert run(capsys, "verify", "bogus")[0] == 2
    assert run(capsys, "verify", "b2", "--p", "4")[0] == 2


def test_argparse_error_exit_code(capsys):
    assert run(capsys, "b2", "block")[0] == 2
    assert run(capsys)[0] == 2


def test_config_precedence(tmp_path):
    cfg_file = tmp_path / "xdg" / "alcove" / "config"
    cfg_file.parent.mkdir(parents=True)
    cfg_file.write_text("# settings\nmaxlen = 3\nseed = 9\nformat = plain\n")
    ns = argparse.Namespace()
    cfg = load_config(ns, environ={})
    assert (cfg.maxlen, cfg.seed, cfg.output_format) == (3, 9, "plain")
    cfg = load_config(ns, environ={"ALCOVE_MAXLEN": "5"})
    assert (cfg.maxlen, cfg.seed) == (5, 9)
    cfg = load_config(argparse.Namespace(maxlen=7), environ={"ALCOVE_MAXLEN": "5"})
    assert cfg.maxlen == 7


def test_config_explicit_file_and_errors(tmp_path):
    f = tmp_path / "c"
    f.write_text("width = 640\n")
    assert load_config(argparse.Namespace(config=str(f)), environ={}).fig_width == 640
    f.write_text("colour = blue\n")
    with pytest.raises(ValueError, match="colour"):
        load_config(argparse.Namespace(config=str(f)), environ={})
    with pytest.raises(ValueError, match="maxlen"):
        load_config(argparse.Namespace(maxlen=99), environ={})


def test_env_drives_cli(capsys, monkeypatch):
    monkeypatch.setenv("ALCOVE_FORMAT", "plain")
    rc, out, _ = run(capsys, "weyl-dim", "B2", "2,1")
    assert rc == 0 and out.strip() == "5"


def test_formula_shape_mismatch(capsys):
    f = {"factors": [{"a": [1, 0, 0], "k": 0}], "d": 0, "den": 1}
    assert run(capsys, "formula", json.dumps(f), "--weight", "3,1", "--p", "5")[0] == 2
    assert run(capsys, "formula", '{"factors": []}', "--weight", "3,1", "--p", "5")[0] == 2
