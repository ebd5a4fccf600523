"""
Functions about the Schmidt decomposition of vector beams.

A beam ``U = sum_t c_t p_t f_t`` with Jones vectors ``p_t`` and scalar modes
``f_t`` is a vector of the tensor product of the polarization space and the
space of transverse fields.
Its Schmidt form ``sqrt(lambda_1) u_1 v_1 + sqrt(lambda_2) u_2 v_2`` is
obtained from the Gram matrix of the modes ``f_t`` and the 2 x T matrix of
polarization coefficients ``c_t p_t``:

1. Factor the Hermitian Gram matrix ``G = V diag(s) V^H``, dropping
   eigenvalues below :const:`.constants.GRAM_TRUNCATION` times its trace.
2. The fields ``phi_k = sum_t (V s**(-1/2))[t, k] f_t`` are orthonormal and
   ``f_t = sum_k (s**(1/2) V^H)[k, t] phi_k``.
3. Writing the beam in that basis gives a 2 x r coefficient matrix whose
   singular value decomposition yields the Schmidt weights (squared singular
   values), the polarization modes (left singular vectors) and the spatial
   modes (right singular vectors mapped back to fields).

"""
from __future__ import annotations
from dataclasses import dataclass
import dataclasses
import logging

import numpy as np
from scipy.integrate import trapezoid

from . import constants as cs
from . import helpers as hp
from . import field_grid as fg
from . import scalar_modes as sm
from . import vector_beam as vb


logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SchmidtResult:
    """
    The Schmidt form of a beam between polarization and space.

    Attributes
    ----------
    lambda1, lambda2 : float
        Schmidt weights in intensity units with ``lambda1 >= lambda2 >= 0``
    K : float
        Schmidt number, in ``[1, 2]``
    pol_modes : tuple
        Orthonormal :class:`.vector_beam.JonesVector` pair ``(u_1, u_2)``
    spatial_modes : tuple
        Orthonormal :class:`.field_grid.SampledScalarField` pair
        ``(v_1, v_2)``; ``v_2`` is identically zero for a rank-one beam
    residual : float
        Relative L2 error of the re-synthesized beam on the sampling grid
    """

    lambda1: float
    lambda2: float
    K: float
    pol_modes: tuple
    spatial_modes: tuple
    residual: float

    @property
    def weights(self) -> np.ndarray:
        return np.array([self.lambda1, self.lambda2])

    def resynthesize(self) -> fg.SampledVectorField:
        """
        Return the sampled field ``sum_i sqrt(lambda_i) u_i v_i``.
        """
        v1, v2 = self.spatial_modes
        u1, u2 = self.pol_modes
        s1, s2 = np.sqrt(self.lambda1), np.sqrt(self.lambda2)
        ex = s1 * u1.h * v1.values + s2 * u2.h * v2.values
        ey = s1 * u1.v * v1.values + s2 * u2.v * v2.values
        return fg.SampledVectorField(v1.grid, ex, ey)


@dataclass(frozen=True, eq=False)
class XYSchmidtResult:
    """
    The Schmidt form of a scalar field between its x and y dependences,

        f(x, y) = sum_k sqrt(weights[k]) x_modes[k](x) y_modes[k](y),

    with modes sampled on the grid axes and normalized with respect to the
    trapezoidal quadrature.
    """

    weights: np.ndarray
    K: float
    x_modes: np.ndarray
    y_modes: np.ndarray
    grid: fg.FieldGrid

    @property
    def rank(self) -> int:
        return len(self.weights)


def polarization_matrix(beam: vb.VectorBeam) -> np.ndarray:
    """
    Return the 2 x T matrix whose column ``t`` is ``coeff_t * pol_t``.
    """
    return np.array(
        [t.coeff * t.pol.as_array() for t in beam.terms], dtype=complex
    ).T


def spatial_gram(
    beam: vb.VectorBeam, grid: fg.FieldGrid, method: str = "auto"
) -> np.ndarray:
    """
    Return the T x T Gram matrix ``G[s, t] = (f_s, f_t)_S`` of the scalar
    modes of the given beam.

    If ``method == 'auto'``, then use closed forms where
    :func:`.scalar_modes.inner_product_analytic` provides one and the
    quadrature on ``grid`` otherwise.
    If ``method == 'smooth'``, then use closed forms only between
    Hermite-Gauss modes and the quadrature otherwise, so that entries
    involving rect spots agree with the sampled fields.
    If ``method == 'quadrature'``, then use the quadrature for every entry.
    """
    if method not in ["auto", "smooth", "quadrature"]:
        raise hp.InvalidParameterError(f"Unknown Gram method {method!r}")

    modes = [t.mode for t in beam.terms]
    T = len(modes)
    G = np.zeros((T, T), dtype=complex)
    sampled = {}

    def get_sample(k):
        if k not in sampled:
            sampled[k] = sm.sample_mode(modes[k], grid)
        return sampled[k]

    n_quad = 0
    for s in range(T):
        for t in range(s, T):
            value = None
            if method == "auto" or (
                method == "smooth"
                and sm.as_box(modes[s]) is None
                and sm.as_box(modes[t]) is None
            ):
                value = sm.inner_product_analytic(modes[s], modes[t])
            if value is None:
                value = fg.inner_product_sampled(get_sample(s), get_sample(t))
                n_quad += 1
            G[s, t] = value
            G[t, s] = np.conj(value)

    if n_quad:
        logger.debug("Computed %s of %s Gram entries by quadrature", n_quad, T * (T + 1) // 2)
    return G


def factor_gram(G: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Factor the Hermitian positive-semidefinite matrix ``G`` as
    ``G ~ V diag(s) V^H``, keeping only the eigenvalues above
    :const:`.constants.GRAM_TRUNCATION` times the trace, and return
    ``(s, V)`` with ``s`` descending.

    Raise a :class:`.helpers.NumericalFailureError` if an eigenvalue lies
    below minus :const:`.constants.GRAM_NEGATIVE_TOLERANCE` times the trace.
    """
    G = (G + G.conj().T) / 2
    trace = np.trace(G).real
    if not trace > 0:
        raise hp.DegenerateBeamError("Gram matrix has zero trace")

    s, V = np.linalg.eigh(G)
    if s[0] < -cs.GRAM_NEGATIVE_TOLERANCE * trace:
        raise hp.NumericalFailureError(
            f"Gram matrix has a negative eigenvalue {s[0]:.3e} (trace {trace:.3e})"
        )
    keep = s > cs.GRAM_TRUNCATION * trace
    if not keep.all():
        logger.debug("Truncated Gram matrix from rank %s to %s", len(s), keep.sum())
    s, V = s[keep][::-1], V[:, keep][:, ::-1]
    return s, V


def _complement(u: vb.JonesVector) -> vb.JonesVector:
    # Unit vector orthogonal to u
    return vb.JonesVector(-np.conj(u.v), np.conj(u.h))


def schmidt_decompose(
    beam: vb.VectorBeam, grid: fg.FieldGrid, gram_method: str = "smooth"
) -> SchmidtResult:
    """
    Compute the Schmidt decomposition of the given beam between
    polarization and transverse space, sampling spatial modes on the given
    grid.
    The Gram matrix is computed by :func:`spatial_gram` with the given
    method; the default keeps the weights consistent with the sampled
    spatial modes for rect spots, whose sampled norms differ from their
    areas.

    Weights are sorted descending.
    If the two weights are equal to relative precision
    :const:`.constants.DEGENERACY_TOLERANCE`, then the polarization modes
    are ``e_H`` and ``e_V``.
    Otherwise the phase of each polarization mode is fixed so that its first
    nonzero component, H then V, is real and positive; the spatial mode
    takes the compensating phase.

    Raise a :class:`.helpers.DegenerateBeamError` if the beam has no
    intensity and a :class:`.helpers.NumericalFailureError` if the Gram
    matrix is significantly indefinite.
    """
    M = polarization_matrix(beam)
    G = spatial_gram(beam, grid, method=gram_method)
    s, V = factor_gram(G)
    W = V / np.sqrt(s)
    B = np.sqrt(s)[:, None] * V.conj().T
    C = M @ B.T

    P, sigma, Qh = np.linalg.svd(C, full_matrices=False)
    if not sigma.size or not sigma[0] > 0:
        raise hp.DegenerateBeamError("Beam has no intensity")

    fields = np.array([f.values for f in vb.sample_terms(beam, grid)])
    zero = np.zeros(grid.shape, dtype=complex)

    def combine(weights):
        # Sampled field sum_t weights[t] f_t
        return np.tensordot(weights, fields, axes=1)

    degenerate = (
        sigma.size == 2
        and (sigma[0] ** 2 - sigma[1] ** 2) < cs.DEGENERACY_TOLERANCE * sigma[0] ** 2
    )
    if degenerate:
        # Any unitary rotates one Schmidt basis into another; pick H and V
        sigma_bar = np.sqrt((sigma[0] ** 2 + sigma[1] ** 2) / 2)
        lambdas = [sigma_bar**2, sigma_bar**2]
        pol_modes = (vb.E_H, vb.E_V)
        spatial = [combine(W @ C[i]) / sigma_bar for i in range(2)]
    else:
        lambdas = [sigma[0] ** 2, sigma[1] ** 2 if sigma.size == 2 else 0.0]
        pol_modes = []
        spatial = []
        for i in range(sigma.size):
            u = P[:, i]
            f = hp.phase_to_real_positive(u, 1e-12)
            pol_modes.append(vb.jones_from_array(f * u))
            spatial.append(np.conj(f) * combine(W @ Qh[i]))
        if sigma.size == 1:
            pol_modes.append(_complement(pol_modes[0]))
            spatial.append(zero)
        pol_modes = tuple(pol_modes)

    spatial_modes = tuple(fg.SampledScalarField(grid, v) for v in spatial)

    result = SchmidtResult(
        lambda1=float(lambdas[0]),
        lambda2=float(lambdas[1]),
        K=schmidt_number(lambdas[0], lambdas[1]),
        pol_modes=pol_modes,
        spatial_modes=spatial_modes,
        residual=0.0,
    )

    # Residual against the sampled beam
    target = fg.SampledVectorField(grid, combine(M[0]), combine(M[1]))
    resynth = result.resynthesize()
    diff = fg.SampledVectorField(grid, target.ex - resynth.ex, target.ey - resynth.ey)
    norm2 = fg.total_intensity_sampled(target)
    residual = np.sqrt(fg.total_intensity_sampled(diff) / norm2) if norm2 > 0 else 0.0
    result = dataclasses.replace(result, residual=float(residual))

    logger.debug(
        "Schmidt weights %.12g, %.12g, K=%.12g, residual %.3e",
        result.lambda1,
        result.lambda2,
        result.K,
        result.residual,
    )
    return result


def schmidt_number_from_weights(weights) -> float:
    """
    Return the Schmidt number ``(sum w)**2 / sum w**2`` of the given
    non-negative weights.

    Raise an :class:`.helpers.InvalidParameterError` if a weight is negative
    or not finite and a :class:`.helpers.DegenerateBeamError` if all weights
    vanish.
    """
    w = np.asarray(weights, dtype=float).ravel()
    hp.check_finite(w, "Schmidt weights")
    if (w < 0).any():
        raise hp.InvalidParameterError(f"Schmidt weights must be >= 0; got {w}")
    total = w.sum()
    if total == 0:
        raise hp.DegenerateBeamError("All Schmidt weights vanish")
    # Scale first so that tiny weights do not underflow when squared
    w = w / total
    return float(1 / (w**2).sum())


def schmidt_number(lambda1: float, lambda2: float) -> float:
    """
    Return ``K = (lambda1 + lambda2)**2 / (lambda1**2 + lambda2**2)``.
    """
    return schmidt_number_from_weights([lambda1, lambda2])


def k_of_separation(a: float, w0: float = cs.DEFAULT_W0) -> float:
    """
    Return the Schmidt number of the polarization-position beam of
    half-separation ``a``, namely ``2 / (1 + I**2)`` where
    ``I = exp(-2 a**2 / w0**2)`` is the overlap of the two displaced
    Gaussians.
    """
    overlap = sm.overlap_gaussian_analytic(a, w0)
    return 2 / (1 + overlap**2)


def schmidt_decompose_xy(field: fg.SampledScalarField) -> XYSchmidtResult:
    """
    Compute the Schmidt decomposition of the given scalar field between its
    x and y dependences by a singular value decomposition of the sampled
    array weighted with the square roots of the trapezoidal quadrature
    weights.
    Weights below :const:`.constants.GRAM_TRUNCATION` times their sum are
    dropped.

    The result depends on the orientation of the Cartesian frame; sample the
    field with a nonzero angle to decompose it in a rotated frame.
    """
    grid = field.grid
    wx = trapezoid(np.eye(grid.nx), dx=grid.dx, axis=1)
    wy = trapezoid(np.eye(grid.ny), dx=grid.dy, axis=1)
    sx, sy = np.sqrt(wx), np.sqrt(wy)

    U, sigma, Vh = np.linalg.svd(sy[:, None] * field.values * sx[None, :])
    weights = sigma**2
    total = weights.sum()
    if not total > 0:
        raise hp.DegenerateBeamError("Field has no intensity")
    keep = weights > cs.GRAM_TRUNCATION * total
    return XYSchmidtResult(
        weights=weights[keep],
        K=schmidt_number_from_weights(weights[keep]),
        x_modes=Vh[keep] / sx[None, :],
        y_modes=(U[:, keep] / sy[:, None]).T,
        grid=grid,
    )
