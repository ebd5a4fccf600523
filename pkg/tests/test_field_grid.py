import pytest
import numpy as np
from numpy.testing import assert_array_equal

from .context import cebeam, GRID, RECT_GRID
from cebeam import field_grid as cbg
from cebeam import helpers as cbh


def test_make_grid():
    grid = cbg.make_grid(5, 3, 2.0, z=0.5)
    assert grid.shape == (3, 5)
    assert grid.dx == pytest.approx(1.0)
    assert grid.dy == pytest.approx(2.0)
    assert_array_equal(grid.x, [-2, -1, 0, 1, 2])
    assert_array_equal(grid.y, [-2, 0, 2])
    assert grid.z == 0.5

    for kwargs in [
        dict(nx=1, ny=4, extent=1),
        dict(nx=4, ny=4, extent=0),
        dict(nx=4, ny=4, extent=-1),
        dict(nx=4.5, ny=4, extent=1),
    ]:
        with pytest.raises(cbh.InvalidParameterError):
            cbg.make_grid(**kwargs)


def test_field_grid_bounds():
    with pytest.raises(cbh.InvalidParameterError):
        cbg.FieldGrid(4, 4, 1, 0, 0, 1)
    with pytest.raises(cbh.InvalidParameterError):
        cbg.FieldGrid(4, 4, 0, 1, 0, np.inf)


def test_mesh():
    grid = cbg.make_grid(3, 2, 1.0)
    X, Y = grid.mesh()
    assert X.shape == Y.shape == (2, 3)
    # Row-major with y outer
    assert_array_equal(X[0], [-1, 0, 1])
    assert_array_equal(Y[:, 0], [-1, 1])


def test_sampled_fields():
    grid = cbg.make_grid(3, 2, 1.0)
    f = cbg.SampledScalarField(grid, np.ones((2, 3)))
    assert f.values.dtype == complex

    with pytest.raises(cbh.InvalidParameterError):
        cbg.SampledScalarField(grid, np.ones((3, 2)))
    with pytest.raises(cbh.InvalidParameterError):
        cbg.SampledScalarField(grid, np.full((2, 3), np.nan))

    v = cbg.SampledVectorField(grid, np.ones((2, 3)), 1j * np.ones((2, 3)))
    assert_array_equal(v.intensity(), 2 * np.ones((2, 3)))
    assert_array_equal(v.component("ey").values, 1j * np.ones((2, 3)))
    with pytest.raises(cbh.InvalidParameterError):
        cbg.SampledVectorField(grid, np.ones((2, 3)), np.ones(6))


def test_integrate():
    # Trapezoid rule is exact for bilinear functions
    X, Y = RECT_GRID.mesh()
    f = cbg.SampledScalarField(RECT_GRID, 1 + X + 2 * Y + X * Y)
    assert cbg.integrate(f) == pytest.approx(16.0, abs=1e-12)

    X, Y = GRID.mesh()
    f = cbg.SampledScalarField(GRID, np.exp(-(X**2)))
    # Integral over y of a constant times the Gaussian integral over x
    assert cbg.integrate(f).real == pytest.approx(16 * np.sqrt(np.pi), rel=1e-12)


def test_inner_product_sampled():
    X, Y = GRID.mesh()
    a = cbg.SampledScalarField(GRID, np.exp(-(X**2 + Y**2)))
    b = cbg.SampledScalarField(GRID, 1j * np.exp(-(X**2 + Y**2)))
    # Conjugate-linear in the first argument
    assert cbg.inner_product_sampled(b, a) == pytest.approx(
        -1j * cbg.inner_product_sampled(a, a)
    )
    assert cbg.inner_product_sampled(a, a).real == pytest.approx(np.pi / 2, rel=1e-12)
    assert cbg.norm_sampled(a) == pytest.approx(np.sqrt(np.pi / 2), rel=1e-12)

    other = cbg.SampledScalarField(RECT_GRID, np.ones(RECT_GRID.shape))
    with pytest.raises(cbh.IncompatibleGridError):
        cbg.inner_product_sampled(a, other)


def test_total_intensity_sampled():
    X, Y = GRID.mesh()
    g = np.exp(-(X**2 + Y**2))
    v = cbg.SampledVectorField(GRID, g, 1j * g)
    assert cbg.total_intensity_sampled(v) == pytest.approx(np.pi, rel=1e-12)


def test_suggest_extent():
    assert cbg.suggest_extent(1.0) == 8.0
    assert cbg.suggest_extent(2.0, factor=3) == 6.0
