"""
Functions about polarization coherence: the pointwise coherence density of a
beam, its integral the covariance matrix, the degree of polarization, and
reduced matrices of the parties of a tripartite tensor.

Matrices are written in the fixed ``{e_H, e_V}`` basis with
``J[p, q] = E_p conj(E_q)``.
"""
from __future__ import annotations
from dataclasses import dataclass
from typing import Union
import logging

import numpy as np
from scipy.integrate import trapezoid

from . import constants as cs
from . import helpers as hp
from . import field_grid as fg
from . import vector_beam as vb


logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CoherenceDensity:
    """
    Pointwise 2 x 2 coherence matrices of a beam on a grid, stored as an
    array of shape ``(ny, nx, 2, 2)``.
    Each matrix is Hermitian positive-semidefinite with trace equal to the
    local intensity.
    """

    grid: fg.FieldGrid
    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        if entries.shape != self.grid.shape + (2, 2):
            raise hp.InvalidParameterError(
                f"Expected entries of shape {self.grid.shape + (2, 2)}; "
                f"got {entries.shape}"
            )
        object.__setattr__(self, "entries", entries)

    def trace(self) -> np.ndarray:
        return np.einsum("...pp->...", self.entries).real


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    """
    The 2 x 2 Hermitian covariance matrix ``J``, the integral of the
    coherence density over the transverse plane.
    """

    j: np.ndarray

    def __post_init__(self):
        j = np.asarray(self.j, dtype=complex)
        if j.shape != (2, 2):
            raise hp.InvalidParameterError(f"Expected a 2x2 matrix; got {j.shape}")
        hp.check_finite(j, "Covariance matrix")
        object.__setattr__(self, "j", j)

    @property
    def trace(self) -> float:
        return float(np.trace(self.j).real)

    def normalized(self) -> np.ndarray:
        """
        Return ``J / trace(J)``.
        """
        if not self.trace > 0:
            raise hp.DegenerateBeamError("Covariance matrix has zero trace")
        return self.j / self.trace

    def eigenvalues(self) -> np.ndarray:
        """
        Return the eigenvalues of ``J`` in descending order.
        """
        return np.linalg.eigvalsh((self.j + self.j.conj().T) / 2)[::-1]

    def as_pairs(self) -> list[float]:
        """
        Return the 8 reals ``re, im`` of the entries in row-major order.
        """
        return [x for z in self.j.ravel() for x in hp.complex_to_pair(z)]


def field_coherence_density(field: fg.SampledVectorField) -> CoherenceDensity:
    """
    Return the coherence density of the given sampled vector field.
    """
    E = np.stack([field.ex, field.ey], axis=-1)
    return CoherenceDensity(field.grid, E[..., :, None] * np.conj(E[..., None, :]))


def coherence_density(beam: vb.VectorBeam, grid: fg.FieldGrid) -> CoherenceDensity:
    """
    Sample the given beam on the given grid and return its coherence
    density, the outer product of the Jones field with its conjugate at
    every node.
    """
    return field_coherence_density(vb.sample_beam(beam, grid))


def covariance_matrix(density: CoherenceDensity) -> CovarianceMatrix:
    """
    Integrate the given coherence density entrywise with the trapezoidal
    rule, x first, and return the resulting covariance matrix.
    """
    grid = density.grid
    inner = trapezoid(density.entries, dx=grid.dx, axis=1)
    return CovarianceMatrix(trapezoid(inner, dx=grid.dy, axis=0))


def degree_of_polarization(j: Union[CovarianceMatrix, np.ndarray]) -> float:
    """
    Return the degree of polarization ``sqrt(1 - 4 det(J) / trace(J)**2)``
    of the given covariance matrix, a number in ``[0, 1]``: 0 for completely
    unpolarized light and 1 for fully polarized light.

    Raise a :class:`.helpers.DegenerateBeamError` if the trace vanishes.
    """
    if not isinstance(j, CovarianceMatrix):
        j = CovarianceMatrix(j)
    tr = j.trace
    if not tr > 0:
        raise hp.DegenerateBeamError("Covariance matrix has zero trace")
    det = np.linalg.det(j.j).real
    return float(np.sqrt(np.clip(1 - 4 * det / tr**2, 0.0, 1.0)))


def coherence_indicator(density: CoherenceDensity) -> float:
    """
    Return the off-diagonal mass of the coherence density relative to its
    total intensity, that is, the quadrature of ``|J_HV|`` divided by the
    quadrature of the trace.
    The result lies in ``[0, 1/2]``; it vanishes when the two polarization
    components never overlap.
    """
    grid = density.grid
    total = fg.integrate_array(grid, density.trace()).real
    if not total > 0:
        raise hp.DegenerateBeamError("Coherence density has no intensity")
    off = fg.integrate_array(grid, np.abs(density.entries[..., 0, 1])).real
    return float(off / total)


def reduced_party_matrix(t: vb.TripartiteTensor, party: str) -> np.ndarray:
    """
    Contract the given tripartite tensor with its conjugate over the two
    parties other than ``party`` and return the reduced Hermitian matrix of
    ``party``, one of :const:`.constants.PARTIES`.
    The matrix is 2 x 2 for polarization and N x N (or M x M) for the x
    (or y) party of a 2 x N x M tensor.
    """
    subscripts = {
        "pol": "pab,qab->pq",
        "x": "apb,aqb->pq",
        "y": "abp,abq->pq",
    }
    if party not in cs.PARTIES:
        raise hp.InvalidParameterError(
            f"Party must be one of {cs.PARTIES}; got {party!r}"
        )
    c = t.coefficients
    return np.einsum(subscripts[party], c, np.conj(c))
