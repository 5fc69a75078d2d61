"""Dense complex linear-algebra kernels for small operator matrices.

Everything works on plain complex128 numpy arrays. Target dimensions are
tiny (typically 2-16, at most a few dozen), so all routines go through
full eigendecompositions or SVDs without any structure exploitation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, InvalidInputError

HERMITICITY_TOL = 1e-8
PSD_TOL = 1e-8
RANK_TOL = 1e-8


def dag(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(m).conj().T


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Coerce to a finite complex 2-D array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise InvalidInputError(f"{name} must be 2-D, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise InvalidInputError(f"{name} has non-finite entries")
    return a


def as_square(m, name: str = "matrix") -> np.ndarray:
    a = as_matrix(m, name)
    if a.shape[0] != a.shape[1]:
        raise InvalidInputError(f"{name} must be square, got shape {a.shape}")
    return a


def hermiticity_defect(m: np.ndarray) -> float:
    """Frobenius distance between m and its conjugate transpose."""
    return float(np.linalg.norm(m - dag(m)))


@dataclass(frozen=True, eq=False)
class HermitianEigen:
    """Spectral decomposition m = V diag(w) V^dag with w sorted descending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True, eq=False)
class Svd:
    """Thin singular value decomposition m = U diag(s) Vh, s descending."""

    u: np.ndarray
    singular_values: np.ndarray
    vh: np.ndarray


def hermitian_eig(m, tol: float = HERMITICITY_TOL) -> HermitianEigen:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending."""
    a = as_square(m)
    defect = hermiticity_defect(a)
    if defect > tol:
        raise InvalidInputError(
            f"matrix is not Hermitian (defect {defect:.3e} > tol {tol:.1e})"
        )
    w, v = np.linalg.eigh((a + dag(a)) / 2)
    return HermitianEigen(eigenvalues=w[::-1].copy(), eigenvectors=v[:, ::-1].copy())


def svd(m) -> Svd:
    """Thin SVD of an arbitrary complex matrix."""
    u, s, vh = np.linalg.svd(as_matrix(m), full_matrices=False)
    return Svd(u=u, singular_values=s, vh=vh)


def psd_sqrt(m, tol: float = PSD_TOL) -> np.ndarray:
    """Principal square root of a Hermitian PSD matrix.

    Eigenvalues in [-tol, 0) are treated as roundoff and clamped to zero;
    anything below -tol is rejected.
    """
    eig = hermitian_eig(m, tol)
    w = eig.eigenvalues
    if w.size and w[-1] < -tol:
        raise InvalidInputError(
            f"matrix is not PSD (min eigenvalue {w[-1]:.3e} < -{tol:.1e})"
        )
    w = np.clip(w, 0.0, None)
    v = eig.eigenvectors
    return (v * np.sqrt(w)) @ dag(v)


def trace_norm(m) -> float:
    """tr|m|, the sum of singular values of a square matrix."""
    a = as_square(m)
    return float(np.linalg.svd(a, compute_uv=False).sum())


def kron(a, b) -> np.ndarray:
    """Kronecker product; dimensions multiply."""
    return np.kron(as_matrix(a, "a"), as_matrix(b, "b"))


def partial_trace(m, dims: tuple[int, int], keep: str) -> np.ndarray:
    """Trace out one tensor factor of an operator on A (x) B.

    `dims` is (dim A, dim B) with row index a*dimB + b; `keep` selects the
    surviving factor, "A" or "B".
    """
    da, db = dims
    a = as_square(m)
    if a.shape[0] != da * db:
        raise DimensionMismatchError(
            f"matrix of dim {a.shape[0]} does not factor as {da} x {db}"
        )
    t = a.reshape(da, db, da, db)
    if keep == "A":
        return np.einsum("abcb->ac", t)
    if keep == "B":
        return np.einsum("abad->bd", t)
    raise InvalidInputError(f"keep must be 'A' or 'B', got {keep!r}")


def range_basis(m, rank_tol: float = RANK_TOL, tol: float = PSD_TOL) -> np.ndarray:
    """Orthonormal columns spanning the eigenspaces with eigenvalue > rank_tol.

    Columns are ordered by descending eigenvalue so downstream pairings are
    deterministic. The column count is the numerical rank.
    """
    eig = hermitian_eig(m, tol)
    w = eig.eigenvalues
    if w.size and w[-1] < -tol:
        raise InvalidInputError(
            f"matrix is not PSD (min eigenvalue {w[-1]:.3e} < -{tol:.1e})"
        )
    mask = w > rank_tol
    return eig.eigenvectors[:, mask]
