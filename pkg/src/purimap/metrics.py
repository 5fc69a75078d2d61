"""Distinguishability and overlap functionals for pairs of states.

Trace distance and Uhlmann fidelity are the standard measures; the
canonical (principal) angles between the two state ranges carry the
geometric information, and the sine of the smallest canonical angle is
the worst-case distinguishability: the trace distance of the closest
pair of pure states drawn from the two ranges.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionMismatchError
from .states import DensityMatrix


def _check_dims(rho: DensityMatrix, sigma: DensityMatrix):
    if rho.dim != sigma.dim:
        raise DimensionMismatchError(f"state dims differ: {rho.dim} vs {sigma.dim}")


@dataclass(frozen=True, eq=False)
class CanonicalAngles:
    """Canonical angle spectrum and paired bases of two operator ranges.

    `angles` is ascending (radians, in [0, pi/2]); column i of `basis_a`
    pairs with column i of `basis_b` at overlap cos(angles[i]), and
    cross-overlaps between different pair indices vanish. When the ranks
    differ, the unpaired basis vectors of the larger range are returned in
    `residual_a` / `residual_b`; they are orthogonal to every vector of
    the other range.
    """

    angles: np.ndarray
    basis_a: np.ndarray
    basis_b: np.ndarray
    residual_a: np.ndarray
    residual_b: np.ndarray


def trace_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Half the sum of absolute eigenvalues of rho - sigma, in [0, 1]."""
    _check_dims(rho, sigma)
    w = np.linalg.eigvalsh(rho.matrix - sigma.matrix)
    return float(0.5 * np.abs(w).sum())


def fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Uhlmann fidelity tr sqrt(sqrt(rho) sigma sqrt(rho)), in [0, 1].

    Evaluated as the singular-value sum of sqrt(rho) sqrt(sigma), the
    stable form of the same quantity: squaring those singular values gives
    the eigenvalues of sqrt(rho) sigma sqrt(rho). The nested-root form
    loses several digits of symmetry on rank-deficient inputs.
    """
    _check_dims(rho, sigma)
    product = linalg.psd_sqrt(rho.matrix) @ linalg.psd_sqrt(sigma.matrix)
    value = float(np.linalg.svd(product, compute_uv=False).sum())
    return float(np.clip(value, 0.0, 1.0))


def canonical_angles(
    rho: DensityMatrix, sigma: DensityMatrix, rank_tol: float = linalg.RANK_TOL
) -> CanonicalAngles:
    """Canonical angles between the ranges of two states.

    The cosines are the singular values of Qa^dag Qb for orthonormal range
    bases Qa, Qb; rotating each basis by the corresponding singular-vector
    factors yields the paired canonical bases. Ties between degenerate
    singular values are broken by SVD output order; only the pairing
    identities are contractual, not the specific vectors.
    """
    _check_dims(rho, sigma)
    qa = linalg.range_basis(rho.matrix, rank_tol)
    qb = linalg.range_basis(sigma.matrix, rank_tol)
    overlap = linalg.dag(qa) @ qb
    u, s, vh = np.linalg.svd(overlap, full_matrices=True)
    full_a = qa @ u
    full_b = qb @ linalg.dag(vh)
    k = min(qa.shape[1], qb.shape[1])
    angles = np.arccos(np.clip(s, 0.0, 1.0))
    return CanonicalAngles(
        angles=angles,
        basis_a=full_a[:, :k],
        basis_b=full_b[:, :k],
        residual_a=full_a[:, k:],
        residual_b=full_b[:, k:],
    )


def wcd(rho: DensityMatrix, sigma: DensityMatrix, rank_tol: float = linalg.RANK_TOL) -> float:
    """Worst-case distinguishability: sine of the smallest canonical angle.

    Equals the minimum trace distance between pure states drawn from the
    two ranges. Zero whenever the ranges overlap, one exactly when the
    states are orthogonal. A largest singular value exceeding 1 by
    roundoff is clamped, making overlapping ranges an exact-zero case.
    """
    _check_dims(rho, sigma)
    qa = linalg.range_basis(rho.matrix, rank_tol)
    qb = linalg.range_basis(sigma.matrix, rank_tol)
    s = np.linalg.svd(linalg.dag(qa) @ qb, compute_uv=False)
    smax = min(1.0, float(s.max())) if s.size else 0.0
    return float(np.sqrt(max(0.0, 1.0 - smax * smax)))


def alpha_beta(
    rho: DensityMatrix, sigma: DensityMatrix, rank_tol: float = linalg.RANK_TOL
) -> tuple[float, float]:
    """Angles (alpha, beta) with sin(alpha) = wcd and cos(beta) = fidelity."""
    _check_dims(rho, sigma)
    alpha = float(np.arcsin(np.clip(wcd(rho, sigma, rank_tol), 0.0, 1.0)))
    beta = float(np.arccos(np.clip(fidelity(rho, sigma), 0.0, 1.0)))
    return alpha, beta
