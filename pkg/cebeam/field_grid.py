"""
Functions about transverse sampling grids, sampled fields and quadrature.

Sampled arrays have shape ``(ny, nx)``: the outer index runs over ``y`` and
the inner index over ``x``, both ascending, which is the row order of the
CSV dumps.
"""
from __future__ import annotations
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import trapezoid

from . import constants as cs
from . import helpers as hp


@dataclass(frozen=True)
class FieldGrid:
    """
    A uniform Cartesian grid over the rectangle
    ``[x_min, x_max] x [y_min, y_max]`` in the transverse plane at
    longitudinal position ``z``.
    Samples include both endpoints, so the spacing is
    ``dx = (x_max - x_min) / (nx - 1)`` and likewise for ``dy``.
    """

    nx: int
    ny: int
    x_min: float
    x_max: float
    y_min: float
    y_max: float
    z: float = 0.0

    def __post_init__(self):
        if int(self.nx) != self.nx or int(self.ny) != self.ny:
            raise hp.InvalidParameterError("Sample counts must be integers")
        if self.nx < 2 or self.ny < 2:
            raise hp.InvalidParameterError(
                f"Need at least 2 samples per axis; got nx={self.nx}, ny={self.ny}"
            )
        if not (self.x_max > self.x_min and self.y_max > self.y_min):
            raise hp.InvalidParameterError("Grid bounds must satisfy max > min")
        if not np.all(
            np.isfinite([self.x_min, self.x_max, self.y_min, self.y_max, self.z])
        ):
            raise hp.InvalidParameterError("Grid bounds must be finite")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def dy(self) -> float:
        return (self.y_max - self.y_min) / (self.ny - 1)

    @property
    def shape(self) -> tuple[int, int]:
        """
        Shape ``(ny, nx)`` of sampled arrays on this grid.
        """
        return (self.ny, self.nx)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    @property
    def y(self) -> np.ndarray:
        return np.linspace(self.y_min, self.y_max, self.ny)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """
        Return the coordinate arrays ``X, Y`` of shape ``(ny, nx)``.
        """
        return np.meshgrid(self.x, self.y, indexing="xy")


@dataclass(frozen=True, eq=False)
class SampledScalarField:
    """
    Complex amplitudes of a scalar field on a grid.
    """

    grid: FieldGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape != self.grid.shape:
            raise hp.InvalidParameterError(
                f"Values of shape {values.shape} do not match "
                f"grid shape {self.grid.shape}"
            )
        hp.check_finite(values, "Field values")
        object.__setattr__(self, "values", values)


@dataclass(frozen=True, eq=False)
class SampledVectorField:
    """
    Horizontal (``ex``) and vertical (``ey``) Jones components of a vector
    field on a grid.
    """

    grid: FieldGrid
    ex: np.ndarray
    ey: np.ndarray

    def __post_init__(self):
        for name in ["ex", "ey"]:
            values = np.asarray(getattr(self, name), dtype=complex)
            if values.shape != self.grid.shape:
                raise hp.InvalidParameterError(
                    f"Component {name} of shape {values.shape} does not match "
                    f"grid shape {self.grid.shape}"
                )
            hp.check_finite(values, f"Component {name}")
            object.__setattr__(self, name, values)

    def intensity(self) -> np.ndarray:
        """
        Return the pointwise intensity ``|ex|**2 + |ey|**2``.
        """
        return np.abs(self.ex) ** 2 + np.abs(self.ey) ** 2

    def component(self, name: str) -> SampledScalarField:
        """
        Return the component ``'ex'`` or ``'ey'`` as a scalar field.
        """
        return SampledScalarField(self.grid, getattr(self, name))


def make_grid(nx: int, ny: int, extent: float, z: float = 0.0) -> FieldGrid:
    """
    Return the grid of ``nx`` by ``ny`` samples covering the symmetric
    square ``[-extent, extent]**2`` at longitudinal position ``z``.
    Raise an :class:`.helpers.InvalidParameterError` if the extent is not
    positive or a count is less than 2.
    """
    if not extent > 0:
        raise hp.InvalidParameterError(f"Grid extent must be positive; got {extent}")
    return FieldGrid(
        nx=nx, ny=ny, x_min=-extent, x_max=extent, y_min=-extent, y_max=extent, z=z
    )


def integrate_array(grid: FieldGrid, values: np.ndarray) -> complex:
    """
    Return the 2D trapezoidal quadrature of the array ``values``,
    of shape ``(ny, nx)``, over the rectangle of the given grid.
    The inner sum runs over ``x`` and the outer over ``y``, always in the
    same order.
    """
    inner = trapezoid(values, dx=grid.dx, axis=1)
    return complex(trapezoid(inner, dx=grid.dy))


def integrate(field: SampledScalarField) -> complex:
    """
    Return the 2D trapezoidal quadrature of the given sampled field over its
    grid rectangle.
    """
    return integrate_array(field.grid, field.values)


def check_same_grid(a: FieldGrid, b: FieldGrid) -> None:
    """
    Raise an :class:`.helpers.IncompatibleGridError` unless the two grids
    are identical.
    """
    if a != b:
        raise hp.IncompatibleGridError(f"Grids differ: {a} versus {b}")


def inner_product_sampled(a: SampledScalarField, b: SampledScalarField) -> complex:
    """
    Return the spatial scalar product ``(a, b)_S``, that is, the quadrature
    of ``conj(a) * b``.
    The product is conjugate-linear in its first argument.
    Raise an :class:`.helpers.IncompatibleGridError` if the fields do not
    share a grid.
    """
    check_same_grid(a.grid, b.grid)
    return integrate_array(a.grid, np.conj(a.values) * b.values)


def norm_sampled(field: SampledScalarField) -> float:
    """
    Return the L2 norm of the given sampled field.
    """
    return float(np.sqrt(max(inner_product_sampled(field, field).real, 0.0)))


def total_intensity_sampled(field: SampledVectorField) -> float:
    """
    Return the quadrature of ``|ex|**2 + |ey|**2`` over the field's grid.
    """
    return integrate_array(field.grid, field.intensity()).real


def suggest_extent(scale: float, factor: Optional[float] = None) -> float:
    """
    Return the default grid half-width for a beam whose largest length
    scale is ``scale``.
    """
    if factor is None:
        factor = cs.EXTENT_FACTOR
    return factor * scale
