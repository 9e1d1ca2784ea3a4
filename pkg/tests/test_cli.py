import csv
import json
import subprocess
import sys

import pytest

from hypcmc.cli import run


def _read(p):
    return p.read_text()


def test_index_example(tmp_path, capsys):
    assert run(["index", "--example", "catenoid-cousin", "--mu", "2.5", "--out", str(tmp_path)]) == 0
    rep = json.loads(_read(tmp_path / "index.json"))
    assert rep["result"]["ind_u"] == 5
    assert rep["result"]["ind_interval"] == [4, 5]
    assert rep["config"]["mu"] == 2.5


def test_spectrum_example(tmp_path):
    assert run(["spectrum", "--mu", "1", "--cutoff", "3", "--out", str(tmp_path)]) == 0
    with open(tmp_path / "spectrum.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert list(rows[0]) == ["q", "rank", "lambda_numeric", "lambda_analytic", "abs_err",
                             "multiplicity"]
    lams = [float(r["lambda_numeric"]) for r in rows]
    assert any(abs(v) < 1e-3 for v in lams) and any(abs(v - 2) < 1e-3 for v in lams)
    assert all(float(r["abs_err"]) <= 1e-3 for r in rows)


def test_surface_example(tmp_path):
    assert run(["surface", "--example", "horosphere", "--grid", "16x16",
                "--out", str(tmp_path)]) == 0
    lines = _read(tmp_path / "surface.obj").splitlines()
    assert sum(1 for ln in lines if ln.startswith("v ")) == 256
    assert (tmp_path / "surface.ends.json").exists()


def test_horizon_from_mesh_file(tmp_path):
    assert run(["surface", "--example", "catenoid-cousin", "--mu", "0.5", "--grid", "21x16",
                "--out", str(tmp_path)]) == 0
    assert run(["horizon", "--mesh", str(tmp_path / "surface.obj"), "--field", "dilation",
                "--out", str(tmp_path)]) == 0
    res = json.loads(_read(tmp_path / "horizon.json"))["result"]
    assert res["v"] == 2 and res["v_adj"] == 2 and res["degenerate"] is False
    assert _read(tmp_path / "horizon.obj").startswith("v ")


def test_ends_and_monodromy(tmp_path):
    assert run(["ends", "--mu", "1", "--nu", "-2", "--q", "2", "--out", str(tmp_path)]) == 0
    e = json.loads(_read(tmp_path / "ends.json"))["result"]
    assert e["m"] == 3 and e["end_type"] == "catenoid_cousin_type"
    assert run(["monodromy", "--example", "catenoid-cousin", "--mu", "0.5",
                "--out", str(tmp_path)]) == 0
    m = json.loads(_read(tmp_path / "monodromy.json"))["result"]
    assert m["in_su2"] is True and m["defect"] < 1e-8


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"example": "catenoid-cousin", "mu": 0.5}))
    assert run(["index", "--config", str(cfg), "--mu", "3.5", "--out", str(tmp_path)]) == 0
    assert json.loads(_read(tmp_path / "index.json"))["result"]["ind_u"] == 7


def test_errors_are_single_line_with_category(tmp_path, capsys):
    assert run(["ends", "--mu", "1", "--nu", "-3", "--q", "1", "--out", str(tmp_path)]) == 1
    err = capsys.readouterr().err.strip().splitlines()
    assert len(err) == 1 and err[0].startswith("error: not-regular:")
    assert run(["index", "--example", "nope", "--out", str(tmp_path)]) == 1
    assert capsys.readouterr().err.startswith("error: unknown-name:")
    assert run(["frobnicate"]) == 2
    assert capsys.readouterr().err.startswith("error: usage:")


def test_module_entry_point(tmp_path):
    p = subprocess.run([sys.executable, "-m", "hypcmc", "ends", "--out", str(tmp_path)],
                       capture_output=True, text=True)
    assert p.returncode == 0 and "m=3" in p.stdout
