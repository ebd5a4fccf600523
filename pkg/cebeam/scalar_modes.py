"""
Functions about scalar paraxial modes: the fundamental Gaussian beam,
one- and two-dimensional Hermite-Gauss modes, rect-profile spots and
transversely shifted copies of any of these.

Mode descriptors are immutable dataclasses; evaluation is done by module
functions that accept NumPy arrays for the coordinates.

Conventions:

- A beam of waist ``w0`` has Rayleigh range ``L = k * w0**2 / 2`` with
  ``k =`` :const:`.constants.WAVENUMBER`.
- The Hermite-Gauss modes have their waist at ``z = 0``, beam radius
  ``w(z) = w0 * sqrt(1 + z**2 / L**2)`` and Gouy factor
  ``exp(-i (n + 1/2) arctan(z / L))`` per 1D factor,
  which is the sign that matches the wavefront curvature of
  :func:`eval_gaussian`.
  With it ``u_0(x, z) u_0(y, z)`` equals the fundamental Gaussian divided by
  ``i`` at every ``z``.
- Rect modes are unit-height and ignore ``z``.
"""
from __future__ import annotations
from dataclasses import dataclass
from typing import Optional, NamedTuple, Union
import math

import numpy as np
from scipy import special

from . import constants as cs
from . import helpers as hp
from . import field_grid as fg


@dataclass(frozen=True)
class GaussianFundamental:
    """
    The normalized fundamental Gaussian beam of waist ``w0``.
    """

    w0: float = cs.DEFAULT_W0

    def __post_init__(self):
        check_waist(self.w0)

    @property
    def L(self) -> float:
        return rayleigh_range(self.w0)


@dataclass(frozen=True)
class HermiteGauss1D:
    """
    The normalized 1D Hermite-Gauss profile ``u_n`` of order ``n`` and
    waist ``w0``.
    """

    n: int
    w0: float = cs.DEFAULT_W0

    def __post_init__(self):
        check_order(self.n)
        check_waist(self.w0)


@dataclass(frozen=True)
class HermiteGauss2D:
    """
    The Hermite-Gauss mode ``U_nm(x, y, z) = u_n(x, z) u_m(y, z)``,
    also known as TEM_nm.
    """

    n: int
    m: int
    w0: float = cs.DEFAULT_W0

    def __post_init__(self):
        check_order(self.n)
        check_order(self.m)
        check_waist(self.w0)


@dataclass(frozen=True)
class RectMode:
    """
    A unit-height square spot of width ``b`` centred in one quadrant of a
    2x2 array of spots with half-separation ``a``.
    Index ``i`` selects the row (0 is up, i.e. ``y = +a``) and ``j`` the
    column (0 is left, i.e. ``x = -a``).

    Spots of neighbouring quadrants overlap unless ``b < 2 * a``;
    constructing an overlapping spot raises an
    :class:`.helpers.InvalidGeometryError` unless ``allow_overlap``.
    """

    i: int
    j: int
    a: float
    b: float
    allow_overlap: bool = False

    def __post_init__(self):
        if self.i not in (0, 1) or self.j not in (0, 1):
            raise hp.InvalidParameterError(
                f"Quadrant selectors must lie in {{0, 1}}; got i={self.i}, j={self.j}"
            )
        if not (math.isfinite(self.a) and self.a >= 0):
            raise hp.InvalidParameterError(f"Half-separation must be >= 0; got {self.a}")
        if not (math.isfinite(self.b) and self.b > 0):
            raise hp.InvalidParameterError(f"Spot width must be > 0; got {self.b}")
        if not self.allow_overlap and not self.b < 2 * self.a:
            raise hp.InvalidGeometryError(
                f"Spots overlap unless b < 2a; got a={self.a}, b={self.b}"
            )


@dataclass(frozen=True)
class ShiftedMode:
    """
    The mode ``base`` displaced by ``(dx, dy)``, so that its value at
    ``(x, y)`` is the value of ``base`` at ``(x - dx, y - dy)``.
    """

    base: "ScalarMode"
    dx: float = 0.0
    dy: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.dx) and math.isfinite(self.dy)):
            raise hp.InvalidParameterError("Shifts must be finite")


ScalarMode = Union[GaussianFundamental, HermiteGauss2D, RectMode, ShiftedMode]


class HermiteGaussForm(NamedTuple):
    """
    A scalar mode written as ``phase * U_nm(x - dx, y - dy, z)``.
    """

    n: int
    m: int
    w0: float
    dx: float
    dy: float
    phase: complex


class Box(NamedTuple):
    """
    A unit-height square of width ``b`` centred at ``(xc, yc)``.
    """

    xc: float
    yc: float
    b: float


def check_waist(w0: float) -> None:
    if not (math.isfinite(w0) and w0 > 0):
        raise hp.InvalidParameterError(f"Waist must be positive; got {w0}")


def check_order(n: int) -> None:
    if int(n) != n or n < 0:
        raise hp.InvalidParameterError(f"Mode order must be a non-negative integer; got {n}")


def rayleigh_range(w0: float) -> float:
    """
    Return the Rayleigh range ``k * w0**2 / 2`` of a beam of waist ``w0``.
    """
    return cs.WAVENUMBER * w0**2 / 2


def beam_radius(w0: float, z) -> np.ndarray:
    """
    Return the beam radius ``w(z) = w0 * sqrt(1 + z**2 / L**2)``.
    """
    L = rayleigh_range(w0)
    return w0 * np.sqrt(1 + (np.asarray(z, dtype=float) / L) ** 2)


def eval_gaussian(g: GaussianFundamental, x, y, z) -> np.ndarray:
    """
    Evaluate the fundamental Gaussian beam

        U(x, y, z) = sqrt(k L / pi) / (z - i L)
        * exp(i k (x**2 + y**2) / (2 (z - i L)))

    at the given coordinates.
    The denominator never vanishes because ``L > 0``.
    """
    k, L = cs.WAVENUMBER, g.L
    q = np.asarray(z, dtype=float) - 1j * L
    rho2 = np.asarray(x, dtype=float) ** 2 + np.asarray(y, dtype=float) ** 2
    return np.sqrt(k * L / np.pi) / q * np.exp(1j * k * rho2 / (2 * q))


def eval_hg1d(u: HermiteGauss1D, x, z) -> np.ndarray:
    """
    Evaluate the normalized 1D Hermite-Gauss profile

        u_n(x, z) = (2 / pi)**(1/4) / sqrt(2**n n! w(z))
        * H_n(sqrt(2) x / w(z)) * exp(i k x**2 / (2 (z - i L)))
        * exp(-i (n + 1/2) arctan(z / L))

    at the given coordinates.
    """
    k, L = cs.WAVENUMBER, rayleigh_range(u.w0)
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=float)
    w = beam_radius(u.w0, z)
    norm = (2 / np.pi) ** 0.25 / np.sqrt(2.0**u.n * special.factorial(u.n) * w)
    envelope = np.exp(1j * k * x**2 / (2 * (z - 1j * L)))
    gouy = np.exp(-1j * (u.n + 0.5) * np.arctan(z / L))
    return norm * special.eval_hermite(u.n, np.sqrt(2) * x / w) * envelope * gouy


def eval_hg2d(U: HermiteGauss2D, x, y, z) -> np.ndarray:
    """
    Evaluate ``U_nm(x, y, z) = u_n(x, z) u_m(y, z)``.
    """
    return eval_hg1d(HermiteGauss1D(U.n, U.w0), x, z) * eval_hg1d(
        HermiteGauss1D(U.m, U.w0), y, z
    )


def rect(xi) -> np.ndarray:
    """
    The rectangle function: 1 for ``|xi| < 1/2``, 1/2 for ``|xi| == 1/2``
    and 0 for ``|xi| > 1/2``.
    """
    a = np.abs(np.asarray(xi, dtype=float))
    return np.where(a < 0.5, 1.0, np.where(a == 0.5, 0.5, 0.0))


def rect_center(r: RectMode) -> tuple[float, float]:
    """
    Return the centre ``(x, y)`` of the given rect spot.
    """
    return (-((-1) ** r.j) * r.a, (-1) ** r.i * r.a)


def eval_rect(r: RectMode, x, y, z=0.0) -> np.ndarray:
    """
    Evaluate ``rect((y - (-1)**i a) / b) * rect((x + (-1)**j a) / b)``.
    The argument ``z`` is ignored: rect profiles are only defined in the
    plane ``z = 0``.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return rect((y - (-1) ** r.i * r.a) / r.b) * rect((x + (-1) ** r.j * r.a) / r.b)


def eval_mode(mode: ScalarMode, x, y, z) -> np.ndarray:
    """
    Evaluate any scalar mode at the given coordinates and return a complex
    array.
    """
    if isinstance(mode, GaussianFundamental):
        result = eval_gaussian(mode, x, y, z)
    elif isinstance(mode, HermiteGauss2D):
        result = eval_hg2d(mode, x, y, z)
    elif isinstance(mode, RectMode):
        result = eval_rect(mode, x, y, z)
    elif isinstance(mode, ShiftedMode):
        result = eval_mode(
            mode.base, np.asarray(x) - mode.dx, np.asarray(y) - mode.dy, z
        )
    else:
        raise hp.InvalidParameterError(f"Unknown scalar mode {mode!r}")
    return np.asarray(result, dtype=complex)


def overlap_gaussian_analytic(a: float, w0: float = cs.DEFAULT_W0) -> float:
    """
    Return the overlap integral of two fundamental Gaussian beams of waist
    ``w0`` displaced by ``+a`` and ``-a``, namely
    ``exp(-a**2 / (w0**2 / 2))``.
    It does not depend on ``z``.
    """
    check_waist(w0)
    if not a >= 0:
        raise hp.InvalidParameterError(f"Displacement must be >= 0; got {a}")
    return math.exp(-(a**2) / (w0**2 / 2))


def sample_mode(
    mode: ScalarMode, grid: fg.FieldGrid, angle: float = 0.0
) -> fg.SampledScalarField:
    """
    Evaluate the given mode on every node of the given
    :class:`.field_grid.FieldGrid` at ``grid.z`` and return the resulting
    :class:`.field_grid.SampledScalarField`.
    If ``angle`` is nonzero, then sample in a frame rotated by ``angle``
    radians about the z axis.
    """
    X, Y = grid.mesh()
    X, Y = hp.rotate_coordinates(X, Y, angle)
    return fg.SampledScalarField(grid, eval_mode(mode, X, Y, grid.z))


def as_hermite_gauss(mode: ScalarMode) -> Optional[HermiteGaussForm]:
    """
    Write the given mode as ``phase * U_nm(x - dx, y - dy, z)`` and return
    the corresponding :class:`HermiteGaussForm`, or ``None`` if the mode is
    not a (shifted) Hermite-Gauss mode.
    """
    if isinstance(mode, GaussianFundamental):
        # U = i u_0(x) u_0(y)
        return HermiteGaussForm(0, 0, mode.w0, 0.0, 0.0, 1j)
    elif isinstance(mode, HermiteGauss2D):
        return HermiteGaussForm(mode.n, mode.m, mode.w0, 0.0, 0.0, 1 + 0j)
    elif isinstance(mode, ShiftedMode):
        form = as_hermite_gauss(mode.base)
        if form is None:
            return None
        return form._replace(dx=form.dx + mode.dx, dy=form.dy + mode.dy)
    return None


def as_box(mode: ScalarMode) -> Optional[Box]:
    """
    Write the given mode as a unit-height square and return the
    corresponding :class:`Box`, or ``None`` if the mode is not a (shifted)
    rect spot.
    """
    if isinstance(mode, RectMode):
        xc, yc = rect_center(mode)
        return Box(xc, yc, mode.b)
    elif isinstance(mode, ShiftedMode):
        box = as_box(mode.base)
        if box is None:
            return None
        return box._replace(xc=box.xc + mode.dx, yc=box.yc + mode.dy)
    return None


def _interval_overlap(c1: float, c2: float, b1: float, b2: float) -> float:
    lo = max(c1 - b1 / 2, c2 - b2 / 2)
    hi = min(c1 + b1 / 2, c2 + b2 / 2)
    return max(hi - lo, 0.0)


def inner_product_analytic(
    mode1: ScalarMode, mode2: ScalarMode
) -> Optional[complex]:
    """
    Return the spatial scalar product ``(mode1, mode2)_S`` in closed form
    when one is available, otherwise ``None``.

    Closed forms cover

    - Hermite-Gauss modes of equal waist and equal shift, which are
      orthonormal,
    - fundamental Gaussians of equal waist and any shifts, whose overlap is
      ``exp(-|d1 - d2|**2 / (2 w0**2))`` at every ``z``,
    - rect spots, whose overlap is the area of their intersection.

    """
    f1, f2 = as_hermite_gauss(mode1), as_hermite_gauss(mode2)
    if f1 is not None and f2 is not None:
        if f1.w0 != f2.w0:
            return None
        phase = np.conj(f1.phase) * f2.phase
        if f1.dx == f2.dx and f1.dy == f2.dy:
            same = f1.n == f2.n and f1.m == f2.m
            return complex(phase) if same else 0j
        if f1.n == f1.m == f2.n == f2.m == 0:
            d2 = (f1.dx - f2.dx) ** 2 + (f1.dy - f2.dy) ** 2
            return complex(phase * math.exp(-d2 / (2 * f1.w0**2)))
        return None

    b1, b2 = as_box(mode1), as_box(mode2)
    if b1 is not None and b2 is not None:
        area = _interval_overlap(b1.xc, b2.xc, b1.b, b2.b) * _interval_overlap(
            b1.yc, b2.yc, b1.b, b2.b
        )
        return complex(area)

    return None


def length_scale(mode: ScalarMode, z: float = 0.0) -> float:
    """
    Return the largest transverse length scale of the given mode at ``z``:
    the beam radius of a Hermite-Gauss mode, the distance from the origin to
    the far edge of a rect spot, increased by any shift.
    """
    if isinstance(mode, (GaussianFundamental, HermiteGauss2D)):
        return float(beam_radius(mode.w0, z))
    elif isinstance(mode, RectMode):
        xc, yc = rect_center(mode)
        return max(abs(xc), abs(yc)) + mode.b
    elif isinstance(mode, ShiftedMode):
        return length_scale(mode.base, z) + max(abs(mode.dx), abs(mode.dy))
    raise hp.InvalidParameterError(f"Unknown scalar mode {mode!r}")


def mode_label(mode: ScalarMode) -> str:
    """
    Return a short human-readable label for the given mode, e.g. ``'HG10'``.
    """
    if isinstance(mode, GaussianFundamental):
        return f"G(w0={mode.w0:g})"
    elif isinstance(mode, HermiteGauss2D):
        return f"HG{mode.n}{mode.m}" + ("" if mode.w0 == 1 else f"(w0={mode.w0:g})")
    elif isinstance(mode, RectMode):
        return f"rect{mode.i}{mode.j}(a={mode.a:g},b={mode.b:g})"
    elif isinstance(mode, ShiftedMode):
        return f"{mode_label(mode.base)}@({mode.dx:g},{mode.dy:g})"
    raise hp.InvalidParameterError(f"Unknown scalar mode {mode!r}")
