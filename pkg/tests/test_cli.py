import math
import json

import pytest

from .context import cebeam
from cebeam import cli as cbi
from cebeam import config as cbc
from cebeam import constants as cbk
from cebeam import render as cbr


@pytest.fixture
def small_grid(monkeypatch):
    monkeypatch.setenv(cbk.GRID_DEFAULT_ENV, "64")


def test_parser():
    parser = cbi.build_parser()
    args = parser.parse_args(["make", "--beam", "ps", "--A", "1", "0", "0", "1j"])
    assert args.command == "make"
    assert args.A == ["1", "0", "0", "1j"]
    assert args.allow_overlap is None

    args = parser.parse_args(["schmidt", "--beam", "noon", "--N", "2"])
    assert args.partition == "pol"
    assert args.angle == 0


def test_make_config(small_grid):
    parser = cbi.build_parser()
    args = parser.parse_args(["make", "--beam", "pp", "--a", "2", "--z", "1"])
    config = cbi.make_config(args)
    assert config == cbc.BeamConfig("pp", {"a": 2.0}, z=1.0)

    # Overlap always studies the polarization-position beam
    args = parser.parse_args(["overlap", "--a", "1"])
    assert cbi.make_config(args).family == "pp"

    args = parser.parse_args(["make"])
    with pytest.raises(cebeam.InvalidParameterError):
        cbi.make_config(args)


def test_overlap(capsys):
    code = cbi.run_cli(
        ["overlap", "--a", "1", "--w0", "1", "--nx", "257", "--ny", "257", "--extent", "10"]
    )
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "analytic 0.1353353"
    assert lines[1] == "quadrature 0.1353353"
    assert lines[2].startswith("difference")

    assert cbi.run_cli(["overlap", "--nx", "16", "--ny", "16"]) == 2


def test_schmidt(small_grid, capsys):
    assert cbi.run_cli(["schmidt", "--beam", "radial"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert list(report) == cbk.REPORT_KEYS
    assert report["K"] == pytest.approx(2, abs=1e-9)
    assert report["params"]["nx"] == 64

    args = ["schmidt", "--beam", "noon", "--N", "1", "--partition", "xy"]
    assert cbi.run_cli(args + ["--nx", "128", "--ny", "128"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["K"] == pytest.approx(2, abs=1e-8)

    assert cbi.run_cli(args + ["--nx", "128", "--ny", "128", "--angle", "45"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["angle"] == 45
    assert d["K"] == pytest.approx(1, abs=1e-8)

    # Only uniformly polarized beams split along x and y
    args = ["schmidt", "--beam", "radial", "--partition", "xy"]
    assert cbi.run_cli(args) == 2


def test_coherence(capsys):
    code = cbi.run_cli(["coherence", "--beam", "pp", "--a", "3", "--nx", "257", "--ny", "257"])
    assert code == 0
    d = json.loads(capsys.readouterr().out)
    assert d["dop"] < 1e-3
    assert d["coherence_indicator"] < 1e-7
    assert d["eigenvalues"] == pytest.approx([1, 1], abs=1e-6)


def test_make(small_grid, tmp_path, capsys):
    path = tmp_path / "ghz.csv"
    assert cbi.run_cli(["make", "--beam", "ghz", "--out", str(path)]) == 0
    out = capsys.readouterr().out
    assert out.startswith(cbk.FAMILY_FORMULAS["ghz"])
    assert "HG11" in out
    field = cbr.read_field_csv(path)
    assert field.grid.shape == (64, 64)


def test_render(small_grid, tmp_path):
    paths = [tmp_path / name for name in ["a.pgm", "a.csv", "b.pgm", "b.csv"]]
    for pgm, csv in [paths[:2], paths[2:]]:
        args = ["render", "--beam", "w", "--out", str(pgm), "--stokes", str(csv)]
        assert cbi.run_cli(args) == 0
    assert paths[0].read_bytes() == paths[2].read_bytes()
    assert paths[1].read_bytes() == paths[3].read_bytes()
    assert cbr.read_pgm(paths[0]).shape == (64, 64)

    # Nothing to write
    assert cbi.run_cli(["render", "--beam", "w"]) == 2
    # Unwritable path
    bad = str(tmp_path / "missing" / "w.pgm")
    assert cbi.run_cli(["render", "--beam", "w", "--out", bad]) == 3


def test_invalid_input(small_grid, capsys):
    assert cbi.run_cli(["schmidt", "--beam", "radial", "--bingo"]) == 2
    assert cbi.run_cli(["bingo"]) == 2
    assert cbi.run_cli(["schmidt", "--beam", "bingo"]) == 2
    assert cbi.run_cli(["schmidt"]) == 2
    assert cbi.run_cli(["--help"]) == 0
    capsys.readouterr()

    args = ["make", "--beam", "fourfold", "--a", "1", "--b", "3"]
    assert cbi.run_cli(args) == 2
    assert "Spots overlap" in capsys.readouterr().err
    assert cbi.run_cli(args + ["--allow-overlap"]) == 0

    assert cbi.run_cli(["make", "--beam", "noon", "--N", "0"]) == 2
    assert cbi.run_cli(["make", "--beam", "ps", "--A", "1", "x", "0", "0"]) == 2


def test_config_file(small_grid, tmp_path, capsys):
    path = tmp_path / "pp.json"
    cbc.BeamConfig("pp", {"a": 1}, nx=32, ny=32).write(path)

    assert cbi.run_cli(["schmidt", "--config", str(path)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["params"]["a"] == 1
    assert report["params"]["nx"] == 32
    assert report["K"] == pytest.approx(2 / (1 + math.exp(-4)), abs=1e-9)

    # Flags override the file
    assert cbi.run_cli(["schmidt", "--config", str(path), "--a", "2", "--nx", "48"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["params"]["a"] == 2
    assert report["params"]["nx"] == 48

    assert cbi.run_cli(["schmidt", "--config", str(tmp_path / "missing.json")]) == 3
    path.write_text("{")
    assert cbi.run_cli(["schmidt", "--config", str(path)]) == 2

    # Quoted numbers are rejected, not compared
    path.write_text(json.dumps({"family": "radial", "nx": "64"}))
    assert cbi.run_cli(["schmidt", "--config", str(path)]) == 2
    assert "nx must be an integer" in capsys.readouterr().err


def test_tripartite(capsys):
    assert cbi.run_cli(["tripartite", "--beam", "ghz"]) == 0
    out = capsys.readouterr().out
    assert "|0>p|0>x|0>y" in out
    assert "|1>p|1>x|1>y" in out
    assert "|0>p|1>x|0>y" not in out
    assert "pol: eigenvalues" in out

    # Orders beyond the truncation
    assert cbi.run_cli(["tripartite", "--beam", "noon", "--N", "4"]) == 2
    args = ["tripartite", "--beam", "noon", "--N", "4", "--levels", "5", "5"]
    assert cbi.run_cli(args) == 0
    assert "|0>p|4>x|0>y" in capsys.readouterr().out

    assert cbi.run_cli(["tripartite", "--beam", "pp", "--a", "1"]) == 2
