"""
Functions about Jones-vector polarization and vector beams.

A :class:`VectorBeam` is a finite sum of terms
``coefficient * Jones vector * scalar mode``.
The term list is the source of truth: beams are only sampled when they are
analyzed or rendered, which keeps closed-form scalar products available.
Coefficients mirror the printed fields exactly; no beam is renormalized.
"""
from __future__ import annotations
from dataclasses import dataclass, field
from typing import Optional, Iterable, Sequence
import cmath
import logging
import math

import numpy as np
import pandas as pd

from . import constants as cs
from . import helpers as hp
from . import field_grid as fg
from . import scalar_modes as sm


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class JonesVector:
    """
    A polarization state with components ``h`` and ``v`` in the basis
    ``{e_H, e_V}``.
    """

    h: complex
    v: complex

    def __post_init__(self):
        object.__setattr__(self, "h", hp.parse_complex(self.h))
        object.__setattr__(self, "v", hp.parse_complex(self.v))

    def as_array(self) -> np.ndarray:
        return np.array([self.h, self.v], dtype=complex)


#: Horizontal polarization
E_H = JonesVector(1, 0)

#: Vertical polarization
E_V = JonesVector(0, 1)


def jones_inner(a: JonesVector, b: JonesVector) -> complex:
    """
    Return the polarization scalar product ``(a, b)_P = conj(a) . b``.
    """
    return np.conj(a.h) * b.h + np.conj(a.v) * b.v


def jones_from_array(values: Sequence[complex]) -> JonesVector:
    return JonesVector(complex(values[0]), complex(values[1]))


@dataclass(frozen=True)
class BeamTerm:
    """
    One term ``coeff * pol * mode`` of a vector beam.
    """

    coeff: complex
    pol: JonesVector
    mode: sm.ScalarMode

    def __post_init__(self):
        object.__setattr__(self, "coeff", hp.parse_complex(self.coeff))


@dataclass(frozen=True)
class VectorBeam:
    """
    The analytic signal of a paraxial vector beam, stored as an ordered
    tuple of :class:`BeamTerm`, together with the family tag and parameters
    of the constructor that built it.
    """

    terms: tuple
    family: str = "custom"
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        terms = tuple(self.terms)
        if not terms:
            raise hp.InvalidParameterError("A beam needs at least one term")
        object.__setattr__(self, "terms", terms)

    def __len__(self):
        return len(self.terms)


@dataclass(frozen=True, eq=False)
class TripartiteTensor:
    """
    Coefficients ``c[p, n, m]`` of a beam in the product basis
    ``e_p u_n(x, z) u_m(y, z)`` of polarization, x-order and y-order, all
    Hermite-Gauss factors having waist ``w0``.
    The default truncation has two levels per party, i.e. shape (2, 2, 2).
    """

    coefficients: np.ndarray
    w0: float = cs.DEFAULT_W0

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=complex)
        if c.ndim != 3 or c.shape[0] != 2:
            raise hp.InvalidParameterError(
                f"Expected coefficients of shape (2, N, M); got {c.shape}"
            )
        object.__setattr__(self, "coefficients", c)

    @property
    def levels(self) -> tuple[int, int]:
        return self.coefficients.shape[1:]


# -------------------------------------
# Beam families
# -------------------------------------
def make_pp_beam(a: float, w0: float = cs.DEFAULT_W0) -> VectorBeam:
    """
    Return the polarization-position twofold beam

        e_H U(x, y - a, z) + e_V U(x, y + a, z)

    built from fundamental Gaussians of waist ``w0`` displaced up and down
    by ``a``.
    """
    if not (math.isfinite(a) and a >= 0):
        raise hp.InvalidParameterError(f"Displacement must be >= 0; got {a}")
    g = sm.GaussianFundamental(w0)
    terms = [
        BeamTerm(1, E_H, sm.ShiftedMode(g, 0.0, a)),
        BeamTerm(1, E_V, sm.ShiftedMode(g, 0.0, -a)),
    ]
    return VectorBeam(terms, "pp", {"a": a, "w0": w0})


def make_fourfold_beam(
    A: Iterable,
    a: float,
    b: float,
    *,
    pol: JonesVector = E_H,
    allow_overlap: bool = False,
) -> VectorBeam:
    """
    Return the position-position fourfold beam

        pol * sum_ij A[i][j] rect((y - (-1)**i a) / b) rect((x + (-1)**j a) / b)

    of four square spots of width ``b`` with uniform polarization ``pol``.
    The coefficients ``A`` are given as a 2x2 array or as the flat sequence
    ``A00, A01, A10, A11``.
    Raise an :class:`.helpers.InvalidGeometryError` unless ``0 < b < 2a`` or
    ``allow_overlap``.
    """
    A = hp.parse_coefficients(A)
    terms = [
        BeamTerm(A[i, j], pol, sm.RectMode(i, j, a, b, allow_overlap))
        for i in range(2)
        for j in range(2)
    ]
    params = {
        "a": a,
        "b": b,
        "A": [complex(x) for x in A.ravel()],
        "allow_overlap": allow_overlap,
    }
    return VectorBeam(terms, "fourfold", params)


def make_twofold_beam(a: float, b: float) -> VectorBeam:
    """
    Return the diagonal twofold beam, i.e. the fourfold beam with
    ``A00 = A11 = 1`` and ``A01 = A10 = 0``: one spot up-left and one
    down-right.
    """
    return make_fourfold_beam([1, 0, 0, 1], a, b)


def make_ps_beam(A: Iterable, w0: float = cs.DEFAULT_W0) -> VectorBeam:
    """
    Return the polarization-spatial beam

        A00 e_H U10 + A01 e_H U01 + A10 e_V U10 + A11 e_V U01

    with Hermite-Gauss modes of waist ``w0``.
    """
    A = hp.parse_coefficients(A)
    modes = [sm.HermiteGauss2D(1, 0, w0), sm.HermiteGauss2D(0, 1, w0)]
    pols = [E_H, E_V]
    terms = [BeamTerm(A[p, s], pols[p], modes[s]) for p in range(2) for s in range(2)]
    params = {"A": [complex(x) for x in A.ravel()], "w0": w0}
    return VectorBeam(terms, "ps", params)


def make_radial_beam(w0: float = cs.DEFAULT_W0) -> VectorBeam:
    """
    Return the radially polarized beam ``e_H U10 + e_V U01``.
    """
    terms = [
        BeamTerm(1, E_H, sm.HermiteGauss2D(1, 0, w0)),
        BeamTerm(1, E_V, sm.HermiteGauss2D(0, 1, w0)),
    ]
    return VectorBeam(terms, "radial", {"w0": w0})


def make_ghz_beam(w0: float = cs.DEFAULT_W0) -> VectorBeam:
    """
    Return the beam ``(e_H U00 + e_V U11) / sqrt(2)``, the lowest-order
    optical analogue of the GHZ state.
    """
    c = 1 / math.sqrt(2)
    terms = [
        BeamTerm(c, E_H, sm.HermiteGauss2D(0, 0, w0)),
        BeamTerm(c, E_V, sm.HermiteGauss2D(1, 1, w0)),
    ]
    return VectorBeam(terms, "ghz", {"w0": w0})


def make_w_beam(w0: float = cs.DEFAULT_W0) -> VectorBeam:
    """
    Return the beam ``(e_H U01 + e_H U10 + e_V U00) / sqrt(3)``, the optical
    analogue of the W state.
    """
    c = 1 / math.sqrt(3)
    terms = [
        BeamTerm(c, E_H, sm.HermiteGauss2D(0, 1, w0)),
        BeamTerm(c, E_H, sm.HermiteGauss2D(1, 0, w0)),
        BeamTerm(c, E_V, sm.HermiteGauss2D(0, 0, w0)),
    ]
    return VectorBeam(terms, "w", {"w0": w0})


def make_noon_beam(N: int, theta: float = 0.0, w0: float = cs.DEFAULT_W0) -> VectorBeam:
    """
    Return the scalar beam ``(U_N0 + exp(i N theta) U_0N) / sqrt(2)``,
    the optical analogue of a generalized NOON state.
    Its polarization is fixed to ``e_H``.
    """
    if int(N) != N or N < 1:
        raise hp.InvalidParameterError(f"N must be a positive integer; got {N}")
    if not math.isfinite(theta):
        raise hp.InvalidParameterError(f"Angle must be finite; got {theta}")
    N = int(N)
    c = 1 / math.sqrt(2)
    terms = [
        BeamTerm(c, E_H, sm.HermiteGauss2D(N, 0, w0)),
        BeamTerm(c * cmath.exp(1j * N * theta), E_H, sm.HermiteGauss2D(0, N, w0)),
    ]
    return VectorBeam(terms, "noon", {"N": N, "theta": theta, "w0": w0})


# -------------------------------------
# Evaluation
# -------------------------------------
def eval_beam(beam: VectorBeam, x, y, z) -> tuple[np.ndarray, np.ndarray]:
    """
    Evaluate the given beam at the given coordinates and return its Jones
    components ``(E_H, E_V)`` as complex arrays.
    """
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    ex = np.zeros(x.shape, dtype=complex)
    ey = np.zeros(x.shape, dtype=complex)
    for term in beam.terms:
        values = term.coeff * sm.eval_mode(term.mode, x, y, z)
        ex = ex + term.pol.h * values
        ey = ey + term.pol.v * values
    return ex, ey


def sample_beam(
    beam: VectorBeam, grid: fg.FieldGrid, angle: float = 0.0
) -> fg.SampledVectorField:
    """
    Evaluate the given beam on every node of the given grid at ``grid.z``.

    If ``angle`` is nonzero, then sample in a frame rotated by ``angle``
    radians about the z axis: both the node coordinates and the Jones
    components are expressed in the rotated frame.
    """
    X, Y = grid.mesh()
    X, Y = hp.rotate_coordinates(X, Y, angle)
    ex, ey = eval_beam(beam, X, Y, grid.z)
    if angle != 0:
        c, s = math.cos(angle), math.sin(angle)
        ex, ey = c * ex + s * ey, -s * ex + c * ey
    return fg.SampledVectorField(grid, ex, ey)


def sample_terms(beam: VectorBeam, grid: fg.FieldGrid) -> list[fg.SampledScalarField]:
    """
    Sample the scalar mode of every term of the given beam, coefficients
    excluded.
    """
    return [sm.sample_mode(term.mode, grid) for term in beam.terms]


def common_polarization(beam: VectorBeam) -> Optional[JonesVector]:
    """
    Return the Jones vector shared by every term of the given beam, or
    ``None`` if the terms carry different polarizations.
    """
    pols = {term.pol for term in beam.terms}
    return pols.pop() if len(pols) == 1 else None


def sample_scalar_beam(
    beam: VectorBeam, grid: fg.FieldGrid, angle: float = 0.0
) -> fg.SampledScalarField:
    """
    Sample the scalar amplitude of a uniformly polarized beam, that is, the
    field ``|pol| * sum_t coeff_t mode_t``, optionally in a frame rotated by
    ``angle`` radians about the z axis.
    Raise an :class:`.helpers.InvalidParameterError` if the terms do not
    share one polarization.
    """
    pol = common_polarization(beam)
    if pol is None:
        raise hp.InvalidParameterError(
            f"Beam family {beam.family!r} is not uniformly polarized"
        )
    X, Y = grid.mesh()
    X, Y = hp.rotate_coordinates(X, Y, angle)
    values = np.zeros(grid.shape, dtype=complex)
    for term in beam.terms:
        values = values + term.coeff * sm.eval_mode(term.mode, X, Y, grid.z)
    return fg.SampledScalarField(grid, np.linalg.norm(pol.as_array()) * values)


def total_intensity(beam: VectorBeam, grid: fg.FieldGrid) -> float:
    """
    Return the quadrature of ``|E_H|**2 + |E_V|**2`` over the given grid.
    """
    return fg.total_intensity_sampled(sample_beam(beam, grid))


def scale_beam(beam: VectorBeam, c: complex) -> VectorBeam:
    """
    Return the beam with every coefficient multiplied by ``c``.
    Raise a :class:`.helpers.DegenerateBeamError` if ``c == 0``.
    """
    c = hp.parse_complex(c)
    if c == 0:
        raise hp.DegenerateBeamError("Scaling by zero leaves no beam")
    terms = [BeamTerm(c * t.coeff, t.pol, t.mode) for t in beam.terms]
    return VectorBeam(terms, beam.family, dict(beam.params))


def beam_length_scale(beam: VectorBeam, z: float = 0.0) -> float:
    """
    Return the largest transverse length scale of the terms of the beam.
    """
    return max(sm.length_scale(t.mode, z) for t in beam.terms)


def default_grid(
    beam: VectorBeam,
    nx: int = cs.DEFAULT_NX,
    ny: int = cs.DEFAULT_NY,
    z: float = 0.0,
    extent: Optional[float] = None,
) -> fg.FieldGrid:
    """
    Return a symmetric grid for the given beam.
    If ``extent`` is not given, then use :const:`.constants.EXTENT_FACTOR`
    times the largest length scale of the beam at ``z``.
    """
    if extent is None:
        extent = fg.suggest_extent(beam_length_scale(beam, z))
    return fg.make_grid(nx, ny, extent, z)


def beam_terms_table(beam: VectorBeam) -> pd.DataFrame:
    """
    Return a DataFrame with one row per term of the given beam and the
    columns

    - ``'term'``: index of the term
    - ``'coeff'``: complex coefficient
    - ``'pol_h'``, ``'pol_v'``: Jones components
    - ``'mode'``: label of the scalar mode, see :func:`.scalar_modes.mode_label`

    """
    rows = [
        [k, t.coeff, t.pol.h, t.pol.v, sm.mode_label(t.mode)]
        for k, t in enumerate(beam.terms)
    ]
    return pd.DataFrame(rows, columns=["term", "coeff", "pol_h", "pol_v", "mode"])


# -------------------------------------
# Tripartite factorization
# -------------------------------------
def factorize_tripartite(
    beam: VectorBeam, levels: tuple[int, int] = (2, 2)
) -> TripartiteTensor:
    """
    Factorize every Hermite-Gauss mode of the given beam as
    ``U_nm = u_n(x) u_m(y)`` and return the coefficients of the beam in the
    product basis of polarization, x-order and y-order, truncated to
    ``levels = (N, M)`` orders per Cartesian axis.

    Raise a :class:`.helpers.NotRepresentableError` if a term is not an
    unshifted Hermite-Gauss mode, if the waists differ, or if an order
    reaches the truncation.
    """
    N, M = levels
    if N < 1 or M < 1:
        raise hp.InvalidParameterError(f"Levels must be positive; got {levels}")
    c = np.zeros((2, N, M), dtype=complex)
    w0 = None
    for term in beam.terms:
        form = sm.as_hermite_gauss(term.mode)
        if form is None or form.dx != 0 or form.dy != 0:
            raise hp.NotRepresentableError(
                f"Mode {sm.mode_label(term.mode)} is not an unshifted Hermite-Gauss mode"
            )
        if w0 is None:
            w0 = form.w0
        elif form.w0 != w0:
            raise hp.NotRepresentableError("Hermite-Gauss waists differ between terms")
        if form.n >= N or form.m >= M:
            raise hp.NotRepresentableError(
                f"Mode {sm.mode_label(term.mode)} exceeds the truncation {N}x{M}"
            )
        c[:, form.n, form.m] += term.coeff * form.phase * term.pol.as_array()

    return TripartiteTensor(c, w0)


def eval_tripartite(t: TripartiteTensor, x, y, z) -> tuple[np.ndarray, np.ndarray]:
    """
    Re-synthesize the field ``sum c[p, n, m] e_p u_n(x, z) u_m(y, z)`` and
    return its Jones components ``(E_H, E_V)``.
    """
    N, M = t.levels
    ux = [sm.eval_hg1d(sm.HermiteGauss1D(n, t.w0), x, z) for n in range(N)]
    uy = [sm.eval_hg1d(sm.HermiteGauss1D(m, t.w0), y, z) for m in range(M)]
    ex = sum(t.coefficients[0, n, m] * ux[n] * uy[m] for n in range(N) for m in range(M))
    ey = sum(t.coefficients[1, n, m] * ux[n] * uy[m] for n in range(N) for m in range(M))
    return np.asarray(ex, dtype=complex), np.asarray(ey, dtype=complex)


def tripartite_table(t: TripartiteTensor, tol: float = 0.0) -> pd.DataFrame:
    """
    Return a DataFrame listing the coefficients of the given tensor whose
    modulus exceeds ``tol``, with the columns ``'p'``, ``'n'``, ``'m'``,
    ``'ket'`` (e.g. ``'|0>p|1>x|0>y'``) and ``'coeff'``.
    """
    rows = [
        [p, n, m, f"|{p}>p|{n}>x|{m}>y", t.coefficients[p, n, m]]
        for p, n, m in np.ndindex(*t.coefficients.shape)
        if abs(t.coefficients[p, n, m]) > tol
    ]
    return pd.DataFrame(rows, columns=["p", "n", "m", "ket", "coeff"])
