import math

import pytest
import numpy as np
from numpy.testing import assert_array_equal

from .context import cebeam
from cebeam import helpers as cbh


def test_parse_complex():
    assert cbh.parse_complex(2) == 2 + 0j
    assert cbh.parse_complex("1+2j") == 1 + 2j
    assert cbh.parse_complex("1 - 2j") == 1 - 2j
    assert cbh.parse_complex([0.5, -1]) == 0.5 - 1j
    assert cbh.parse_complex((3, 4)) == 3 + 4j
    for bad in ["bingo", [1, 2, 3], None, float("nan"), "inf"]:
        with pytest.raises(cbh.InvalidParameterError):
            cbh.parse_complex(bad)


def test_complex_to_pair():
    assert cbh.complex_to_pair(1 - 2j) == [1.0, -2.0]
    assert cbh.parse_complex(cbh.complex_to_pair(3.5j)) == 3.5j


def test_parse_coefficients():
    expect = np.array([[1, 2j], [0, -1]])
    assert_array_equal(cbh.parse_coefficients([1, "2j", 0, -1]), expect)
    assert_array_equal(cbh.parse_coefficients([[1, [0, 2]], [0, -1]]), expect)
    with pytest.raises(cbh.InvalidParameterError):
        cbh.parse_coefficients([1, 2, 3])
    with pytest.raises(cbh.InvalidParameterError):
        cbh.parse_coefficients("1234")


def test_error_hierarchy():
    for e in [
        cbh.InvalidParameterError,
        cbh.IncompatibleGridError,
        cbh.InvalidGeometryError,
        cbh.NotRepresentableError,
        cbh.DegenerateBeamError,
    ]:
        assert issubclass(e, ValueError)
    assert issubclass(cbh.NumericalFailureError, ArithmeticError)
    assert not issubclass(cbh.NumericalFailureError, ValueError)


def test_check_finite():
    a = np.ones(3)
    assert cbh.check_finite(a) is a
    with pytest.raises(cbh.InvalidParameterError):
        cbh.check_finite(np.array([1, np.nan]))


def test_rotate_coordinates():
    x, y = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    # Zero angle is the identity, objects included
    xr, yr = cbh.rotate_coordinates(x, y, 0)
    assert xr is x and yr is y

    xr, yr = cbh.rotate_coordinates(x, y, math.pi / 2)
    assert np.allclose(xr, [0, -1], atol=1e-15)
    assert np.allclose(yr, [1, 0], atol=1e-15)


def test_first_significant():
    assert cbh.first_significant(np.array([0, 1e-9, 2, 3]), 1e-6) == 2
    assert cbh.first_significant(np.zeros(4), 0) == -1


def test_phase_to_real_positive():
    v = np.array([0, -2j, 1])
    f = cbh.phase_to_real_positive(v)
    assert abs(f) == pytest.approx(1)
    w = f * v
    assert w[1].real == pytest.approx(2) and w[1].imag == pytest.approx(0)
    assert cbh.phase_to_real_positive(np.zeros(2)) == 1
