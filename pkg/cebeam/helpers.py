"""
Functions and exceptions useful across modules.
"""
from __future__ import annotations
from typing import Union, Iterable
import math

import numpy as np


class InvalidParameterError(ValueError):
    """
    Raised when a length, order, count or coefficient lies outside its
    legal range.
    """


class IncompatibleGridError(ValueError):
    """
    Raised when two sampled fields do not share a grid.
    """


class InvalidGeometryError(ValueError):
    """
    Raised when rect spots would overlap, that is, when ``b >= 2 * a``
    without an explicit override.
    """


class NotRepresentableError(ValueError):
    """
    Raised when a beam does not lie in the span of a truncated
    Hermite-Gauss product basis.
    """


class DegenerateBeamError(ValueError):
    """
    Raised when a beam or a set of weights carries no intensity at all.
    """


class NumericalFailureError(ArithmeticError):
    """
    Raised when a computation that is exact in exact arithmetic breaks down
    numerically, e.g. a Gram matrix with a significantly negative eigenvalue.
    """


def parse_complex(x: Union[complex, float, str, Iterable]) -> complex:
    """
    Convert ``x`` to a Python complex number.
    Accept a number, a string understood by ``complex``, e.g. ``'1+2j'``,
    or a pair ``[real, imag]`` as written in JSON files.
    Raise an :class:`InvalidParameterError` if that fails or the result is
    not finite.
    """
    try:
        if isinstance(x, str):
            result = complex(x.replace(" ", ""))
        elif isinstance(x, (list, tuple)):
            re, im = x
            result = complex(float(re), float(im))
        else:
            result = complex(x)
    except (TypeError, ValueError):
        raise InvalidParameterError(f"Cannot read {x!r} as a complex number")

    if not (math.isfinite(result.real) and math.isfinite(result.imag)):
        raise InvalidParameterError(f"Complex number {x!r} is not finite")
    return result


def complex_to_pair(z: complex) -> list[float]:
    """
    Return the JSON-friendly pair ``[z.real, z.imag]``.
    """
    z = complex(z)
    return [z.real, z.imag]


def parse_coefficients(values: Iterable) -> np.ndarray:
    """
    Given four coefficients ``A00, A01, A10, A11`` in any form accepted by
    :func:`parse_complex`, or a 2x2 nested list of them,
    return them as a 2x2 complex NumPy array.
    A string is not split into coefficients.
    """
    if isinstance(values, (str, bytes)):
        raise InvalidParameterError(f"Expected 4 coefficients; got the string {values!r}")
    values = list(values)
    if len(values) == 2 and all(isinstance(v, (list, tuple)) for v in values):
        # Two rows of a 2x2 matrix
        flat = [v for row in values for v in row]
    else:
        flat = values

    if len(flat) != 4:
        raise InvalidParameterError(
            f"Expected 4 coefficients A00, A01, A10, A11; got {len(flat)}"
        )
    return np.array([parse_complex(v) for v in flat], dtype=complex).reshape(2, 2)


def check_finite(array: np.ndarray, name: str = "array") -> np.ndarray:
    """
    Return ``array`` unchanged if all its entries are finite;
    otherwise raise an :class:`InvalidParameterError`.
    """
    if not np.all(np.isfinite(array)):
        raise InvalidParameterError(f"{name} has non-finite entries")
    return array


def rotate_coordinates(
    x: np.ndarray, y: np.ndarray, angle: float
) -> tuple[np.ndarray, np.ndarray]:
    """
    Given coordinates ``x, y`` in a frame rotated by ``angle`` radians about
    the z axis, return the corresponding lab-frame coordinates.
    An angle of zero returns the inputs unchanged (no rounding).
    """
    if angle == 0:
        return x, y
    c, s = math.cos(angle), math.sin(angle)
    return c * x - s * y, s * x + c * y


def first_significant(values: np.ndarray, threshold: float) -> int:
    """
    Return the index of the first entry of the flattened array ``values``
    whose modulus exceeds ``threshold``, or -1 if there is none.
    """
    hits = np.flatnonzero(np.abs(values).ravel() > threshold)
    return int(hits[0]) if hits.size else -1


def phase_to_real_positive(
    values: np.ndarray, threshold: float = 0.0
) -> complex:
    """
    Return the unit-modulus factor that, multiplied into ``values``,
    makes its first significant entry (modulus above ``threshold``) real
    and positive.
    Return 1 if no entry is significant.
    """
    k = first_significant(values, threshold)
    if k < 0:
        return 1 + 0j
    v = values.ravel()[k]
    return complex(np.conj(v) / abs(v))

