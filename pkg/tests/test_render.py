import math
import json

import pytest
import numpy as np
import pandas as pd

from .context import cebeam, GRID, RECT_GRID, radial, fourfold, tem10
from cebeam import render as cbr
from cebeam import config as cbc
from cebeam import constants as cbk
from cebeam import field_grid as cbg
from cebeam import vector_beam as cbb
from cebeam import helpers as cbh


def test_dump_field_csv(tmp_path):
    grid = cbg.make_grid(2, 2, 1.0)
    field = cbg.SampledVectorField(grid, np.ones(grid.shape), 1j * np.ones(grid.shape))
    path = tmp_path / "field.csv"
    cbr.dump_field_csv(field, path)
    lines = path.read_text().split("\n")
    assert lines[-1] == ""
    lines = lines[:-1]
    assert len(lines) == 6
    assert lines[0] == "# cebeam-field v1 z=0.0"
    assert lines[1] == "x,y,re_ex,im_ex,re_ey,im_ey"
    # y outer, x inner
    rows = [[float(v) for v in line.split(",")] for line in lines[2:]]
    assert [r[:2] for r in rows] == [[-1, -1], [1, -1], [-1, 1], [1, 1]]
    assert rows[0][2:] == [1, 0, 0, 1]


def test_field_csv_round_trip(tmp_path):
    grid = cbg.make_grid(17, 9, 4.0, z=0.7)
    field = cbb.sample_beam(cbb.make_ps_beam([1, 0.3j, -0.2, 1 + 1j]), grid)
    path = tmp_path / "field.csv"
    cbr.dump_field_csv(field, path)
    other = cbr.read_field_csv(path)
    assert other.grid == grid
    assert np.array_equal(other.ex, field.ex)
    assert np.array_equal(other.ey, field.ey)

    # Same field, same bytes
    path2 = tmp_path / "field2.csv"
    cbr.dump_field_csv(field, path2)
    assert path.read_bytes() == path2.read_bytes()


def test_read_field_csv_errors(tmp_path):
    path = tmp_path / "field.csv"
    path.write_text("x,y\n1,2\n")
    with pytest.raises(cbh.InvalidParameterError):
        cbr.read_field_csv(path)
    path.write_text("# cebeam-field v1 z=0.0\nx,y,re_ex\n1,2,3\n")
    with pytest.raises(cbh.InvalidParameterError):
        cbr.read_field_csv(path)


def test_field_table_radial():
    grid = cbg.make_grid(5, 5, 2.0)
    f = cbr.field_table(cbb.sample_beam(radial, grid))
    assert f.shape == (25, 6)
    # On the x axis the vertical component vanishes
    g = f.loc[f["y"] == 0]
    assert g.shape[0] == 5
    assert (g["re_ey"] == 0).all() and (g["im_ey"] == 0).all()


def test_intensity_image():
    grid = cbg.make_grid(3, 4, 1.0)
    X, Y = grid.mesh()
    # Intensity grows with y
    field = cbg.SampledVectorField(grid, Y + 1, np.zeros(grid.shape))
    img = cbr.intensity_image(field)
    assert img.dtype == np.uint16
    assert img.shape == (4, 3)
    # Largest y on top
    assert (img[0] == cbk.PGM_MAXVAL).all()
    assert (img[-1] == 0).all()

    zero = cbg.SampledVectorField(grid, np.zeros(grid.shape), np.zeros(grid.shape))
    assert not cbr.intensity_image(zero).any()


def test_render_intensity_pgm(tmp_path):
    field = cbb.sample_beam(tem10, cbg.make_grid(40, 30, 4.0))
    path = tmp_path / "beam.pgm"
    cbr.render_intensity_pgm(field, path)
    data = path.read_bytes()
    header = b"P5\n40 30\n65535\n"
    assert data.startswith(header)
    assert len(data) == len(header) + 2 * 40 * 30

    img = cbr.read_pgm(path)
    assert np.array_equal(img, cbr.intensity_image(field))
    assert img.max() == 65535

    path2 = tmp_path / "beam2.pgm"
    cbr.render_intensity_pgm(field, path2)
    assert path2.read_bytes() == data

    path.write_bytes(b"P2\n1 1\n255\n0")
    with pytest.raises(cbh.InvalidParameterError):
        cbr.read_pgm(path)


def test_render_rect_spots(tmp_path):
    path = tmp_path / "fourfold.pgm"
    cbr.render_intensity_pgm(cbb.sample_beam(fourfold, RECT_GRID), path)
    img = cbr.read_pgm(path)
    values, counts = np.unique(img, return_counts=True)
    # Interiors, edges at intensity 1/4 and corners at 1/16
    assert dict(zip(values.tolist(), counts.tolist())) == {
        0: 65**2 - 324,
        4096: 16,
        16384: 112,
        65535: 196,
    }


def test_stokes_table():
    field = cbb.sample_beam(cbb.make_ps_beam([1, 0.5j, 0.3, -1]), GRID)
    f = cbr.stokes_table(field)
    assert list(f.columns) == cbk.STOKES_CSV_COLUMNS
    assert f.shape[0] == GRID.nx * GRID.ny
    assert np.allclose(f["s0"].values, field.intensity().ravel())
    # Fully polarized at every point
    lhs = f["s0"] ** 2
    rhs = f["s1"] ** 2 + f["s2"] ** 2 + f["s3"] ** 2
    assert np.allclose(lhs, rhs, rtol=1e-12, atol=1e-30)

    # Radial polarization at the waist is linear
    f = cbr.stokes_table(cbb.sample_beam(radial, GRID))
    assert np.max(np.abs(f["s3"].values)) < 1e-15


def test_polarization_ellipse():
    grid = cbg.make_grid(2, 2, 1.0)
    ones = np.ones(grid.shape)
    cases = [
        (ones, 0 * ones, 0, 0),
        (ones, ones, math.pi / 4, 0),
        (ones, 1j * ones, 0, math.pi / 4),
        (0 * ones, ones, math.pi / 2, 0),
    ]
    for ex, ey, psi, chi in cases:
        f = cbr.polarization_ellipse(
            cbr.stokes_table(cbg.SampledVectorField(grid, ex, ey))
        )
        assert np.allclose(f["psi"], psi)
        assert np.allclose(f["chi"], chi)

    zero = cbg.SampledVectorField(grid, 0 * ones, 0 * ones)
    f = cbr.polarization_ellipse(cbr.stokes_table(zero))
    assert (f["chi"] == 0).all()


def test_render_stokes_csv(tmp_path):
    grid = cbg.make_grid(4, 3, 2.0, z=-1.0)
    path = tmp_path / "stokes.csv"
    cbr.render_stokes_csv(cbb.sample_beam(radial, grid), path)
    lines = path.read_text().split("\n")
    assert lines[0] == "# cebeam-stokes v1 z=-1.0"
    assert lines[1] == "x,y,s0,s1,s2,s3"
    assert len(lines) == 2 + 12 + 1


def test_build_report():
    config = cbc.BeamConfig("radial", nx=64, ny=64)
    report = cbr.build_report(config)
    assert list(report) == cbk.REPORT_KEYS
    assert report["family"] == "radial"
    assert report["params"] == {"extent": 8.0, "nx": 64, "ny": 64, "w0": 1.0, "z": 0.0}
    assert report["K"] == pytest.approx(2, abs=1e-9)
    assert report["dop"] == pytest.approx(0, abs=1e-3)
    assert report["total_intensity"] == pytest.approx(2, rel=1e-6)
    assert len(report["covariance"]) == 8

    # Serializes deterministically
    s = cbr.report_to_json(report)
    assert s == cbr.report_to_json(cbr.build_report(config))
    assert s.endswith("}\n")
    assert json.loads(s) == report

    config = cbc.BeamConfig("ps", {"A": [1, "1j", 0, 0]}, nx=32, ny=32)
    report = cbr.build_report(config)
    assert report["params"]["A"] == [[1.0, 0.0], [0.0, 1.0], [0.0, 0.0], [0.0, 0.0]]
    json.loads(cbr.report_to_json(report))

    with pytest.raises(cbh.InvalidParameterError):
        cbr.build_report(cbc.BeamConfig("pp", nx=8, ny=8))


def test_describe_report():
    report = cbr.build_report(cbc.BeamConfig("pp", {"a": 1}, nx=64, ny=64))
    f = cbr.describe_report(report)
    assert isinstance(f, pd.DataFrame)
    assert list(f.columns) == ["indicator", "value"]
    d = dict(f.values)
    assert d["family"] == "pp"
    assert d["param_a"] == 1
    assert d["K"] == report["K"]
    assert d["J_HH"] == pytest.approx(1, rel=1e-6)
    assert abs(d["J_HV"]) == pytest.approx(math.exp(-2), rel=1e-6)


def test_build_report_rect_spots():
    config = cbc.BeamConfig("fourfold", {"a": 1, "b": 0.5}, nx=256, ny=256)
    report = cbr.build_report(config)
    cov = report["covariance"]
    total = report["total_intensity"]
    assert report["lambda1"] + report["lambda2"] == pytest.approx(total, rel=1e-9)
    assert cov[0] + cov[6] == pytest.approx(total, rel=1e-9)
    assert report["K"] == pytest.approx(1, abs=1e-9)
    assert report["residual"] < 1e-9
