"""Independent reference computations used to cross-check the fast paths.

These deliberately avoid the canonical-angle and trace-norm shortcuts of
the main code: the worst-case distinguishability is re-derived by direct
numerical minimization over parametrized range vectors, and the maximal
purification overlap by direct maximization over auxiliary unitaries.
They are slow and only meant for verification at test scale.
"""

from __future__ import annotations

import numpy as np
import scipy.optimize

from . import linalg
from .states import DensityMatrix


def _unit_coefficients(params: np.ndarray, r: int) -> np.ndarray:
    """Hyperspherical angles plus phases -> unit coefficient vector in C^r."""
    if r == 1:
        return np.ones(1, dtype=complex)
    ts = params[: r - 1]
    ps = params[r - 1 :]
    c = np.ones(r, dtype=complex)
    sin_prod = 1.0
    for k in range(r - 1):
        c[k] = sin_prod * np.cos(ts[k])
        sin_prod *= np.sin(ts[k])
    c[r - 1] = sin_prod
    for k in range(1, r):
        c[k] *= np.exp(1j * ps[k - 1])
    return c


def _side_grid(r: int, t_points: int, phase_points: int):
    if r == 1:
        return np.ones((1, 1), dtype=complex), np.zeros((1, 0))
    if r > 2:
        # keep the product grid tractable beyond two-dimensional ranges
        t_points, phase_points = min(t_points, 8), min(phase_points, 4)
    ts = np.linspace(0.0, np.pi / 2, t_points)
    ph = np.linspace(0.0, 2 * np.pi, phase_points, endpoint=False)
    grids = np.meshgrid(*([ts] * (r - 1) + [ph] * (r - 1)), indexing="ij")
    params = np.stack([g.ravel() for g in grids], axis=1)
    coeffs = np.array([_unit_coefficients(p, r) for p in params])
    return coeffs, params


def wcd_bruteforce(
    rho: DensityMatrix,
    sigma: DensityMatrix,
    rank_tol: float = linalg.RANK_TOL,
    t_points: int = 50,
    phase_points: int = 8,
    starts: int = 3,
) -> float:
    """Minimize the pure-pair trace distance over the two ranges directly.

    Range vectors are parametrized by hyperspherical coordinates on the
    orthonormal range bases. A coarse overlap grid seeds multi-start
    Nelder-Mead refinement of the definition-level objective, i.e. half
    the absolute eigenvalue sum of the projector difference.
    """
    qa = linalg.range_basis(rho.matrix, rank_tol)
    qb = linalg.range_basis(sigma.matrix, rank_tol)
    ra, rb = qa.shape[1], qb.shape[1]
    na, nb = max(0, 2 * (ra - 1)), max(0, 2 * (rb - 1))
    if max(ra, rb) > 2:
        # coarser grid above rank 2 needs more refinement work
        starts = max(starts, 8)

    def objective(x):
        va = qa @ _unit_coefficients(x[:na], ra)
        vb = qb @ _unit_coefficients(x[na : na + nb], rb)
        diff = np.outer(va, va.conj()) - np.outer(vb, vb.conj())
        return 0.5 * np.abs(np.linalg.eigvalsh(diff)).sum()

    # seeding: largest |overlap| on the coarse grid is the closest pair
    coeff_a, params_a = _side_grid(ra, t_points, phase_points)
    coeff_b, params_b = _side_grid(rb, t_points, phase_points)
    overlap = np.abs(coeff_a.conj() @ (linalg.dag(qa) @ qb) @ coeff_b.T)
    order = np.argsort(overlap, axis=None)[::-1][:starts]

    best = np.inf
    for flat in order:
        ia, ib = np.unravel_index(flat, overlap.shape)
        x0 = np.concatenate([params_a[ia], params_b[ib]])
        if x0.size == 0:
            best = min(best, objective(x0))
            continue
        result = scipy.optimize.minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={"xatol": 1e-6, "fatol": 1e-10, "maxiter": 2000, "maxfev": 4000},
        )
        best = min(best, float(result.fun))
    return float(best)


def _hermitian_from_params(params: np.ndarray, dim: int) -> np.ndarray:
    h = np.zeros((dim, dim), dtype=complex)
    idx = 0
    for i in range(dim):
        h[i, i] = params[idx]
        idx += 1
    for i in range(dim):
        for j in range(i + 1, dim):
            h[i, j] = params[idx] + 1j * params[idx + 1]
            h[j, i] = params[idx] - 1j * params[idx + 1]
            idx += 2
    return h


def purification_overlap_search(
    rho: DensityMatrix, sigma: DensityMatrix, starts: int = 3, seed=0
) -> float:
    """Maximize |<psi_rho| (I (x) U) |psi_sigma>| over auxiliary unitaries.

    psi_X is the standard square-root purification vec(sqrt(X)) with an
    auxiliary factor of full dimension, so the one-sided unitary orbit
    covers all purifications. U = exp(iH) is parametrized by a Hermitian
    H with dim^2 real parameters; BFGS from a few starts. Intended for
    dim <= 3.
    """
    dim = rho.dim
    psi1 = linalg.psd_sqrt(rho.matrix).reshape(-1)
    m2 = linalg.psd_sqrt(sigma.matrix).reshape(-1)
    eye = np.eye(dim, dtype=complex)
    rng = np.random.default_rng(seed)

    def neg_overlap(params):
        h = _hermitian_from_params(params, dim)
        w, v = np.linalg.eigh(h)
        u = (v * np.exp(1j * w)) @ linalg.dag(v)
        psi2 = np.kron(eye, u) @ m2
        return -abs(np.vdot(psi1, psi2))

    n_params = dim * dim
    initial = [np.zeros(n_params)] + [rng.standard_normal(n_params) for _ in range(starts - 1)]
    best = 0.0
    for x0 in initial:
        result = scipy.optimize.minimize(
            neg_overlap, x0, method="BFGS", options={"maxiter": 400}
        )
        best = max(best, -float(result.fun))
    return best
