"""Validated quantum-state value types and generators for test families."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionMismatchError, InvalidInputError, InvalidStateError

HERMITICITY_TOL = 1e-8
EIGENVALUE_TOL = 1e-8
TRACE_TOL = 1e-8
NORM_TOL = 1e-10
PRIOR_TOL = 1e-10


def _frozen_array(a, dtype=complex) -> np.ndarray:
    out = np.array(a, dtype=dtype)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace operator."""

    matrix: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.matrix, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InvalidStateError(f"density matrix must be square, got shape {a.shape}")
        if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
            raise InvalidStateError("density matrix has non-finite entries")
        defect = linalg.hermiticity_defect(a)
        if defect > HERMITICITY_TOL:
            raise InvalidStateError(f"density matrix is not Hermitian (defect {defect:.3e})")
        w = np.linalg.eigvalsh((a + a.conj().T) / 2)
        if w.min() < -EIGENVALUE_TOL:
            raise InvalidStateError(f"density matrix has negative eigenvalue {w.min():.3e}")
        tr = a.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidStateError(f"density matrix trace is {tr:.10f}, expected 1")
        object.__setattr__(self, "matrix", _frozen_array(a))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        """Spectrum sorted descending."""
        return linalg.hermitian_eig(self.matrix).eigenvalues

    def rank(self, rank_tol: float = linalg.RANK_TOL) -> int:
        return int(np.sum(self.eigenvalues() > rank_tol))


@dataclass(frozen=True, eq=False)
class PureStateVector:
    """Unit-norm complex state vector."""

    amplitudes: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if v.size == 0:
            raise InvalidStateError("state vector is empty")
        if not np.all(np.isfinite(v.real)) or not np.all(np.isfinite(v.imag)):
            raise InvalidStateError("state vector has non-finite entries")
        norm = np.linalg.norm(v)
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidStateError(f"state vector norm is {norm:.12f}, expected 1")
        object.__setattr__(self, "amplitudes", _frozen_array(v))

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def density(self) -> DensityMatrix:
        return DensityMatrix(self.projector())


@dataclass(frozen=True, eq=False)
class Ensemble:
    """States with a-priori probabilities."""

    states: tuple
    priors: np.ndarray

    def __post_init__(self):
        states = tuple(self.states)
        if not states:
            raise InvalidInputError("ensemble must contain at least one state")
        if not all(isinstance(s, DensityMatrix) for s in states):
            raise InvalidInputError("ensemble states must be DensityMatrix instances")
        dims = {s.dim for s in states}
        if len(dims) != 1:
            raise DimensionMismatchError(f"ensemble states have mixed dims {sorted(dims)}")
        priors = np.asarray(self.priors, dtype=float).reshape(-1)
        if priors.size != len(states):
            raise InvalidInputError("one prior per state required")
        if np.any(priors <= 0):
            raise InvalidInputError("priors must be strictly positive")
        if abs(priors.sum() - 1.0) > PRIOR_TOL:
            raise InvalidInputError(f"priors sum to {priors.sum():.12f}, expected 1")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "priors", _frozen_array(priors, dtype=float))

    @classmethod
    def pair(cls, a: DensityMatrix, b: DensityMatrix, eta: float = 0.5) -> "Ensemble":
        """Two-state ensemble with priors (eta, 1 - eta)."""
        if not 0.0 < eta < 1.0:
            raise InvalidInputError(f"eta must lie in (0, 1), got {eta}")
        return cls(states=(a, b), priors=np.array([eta, 1.0 - eta]))

    @property
    def dim(self) -> int:
        return self.states[0].dim

    def __len__(self) -> int:
        return len(self.states)


def purity(rho: DensityMatrix) -> float:
    """tr(rho^2); equals 1 exactly for pure states."""
    return float(np.vdot(rho.matrix, rho.matrix).real)


def is_pure(rho: DensityMatrix, tol: float = 1e-9) -> bool:
    return 1.0 - purity(rho) <= tol


def random_pure(dim: int, seed) -> PureStateVector:
    """Haar-random pure state via normalized complex Gaussian amplitudes."""
    if dim < 1:
        raise InvalidInputError(f"dim must be >= 1, got {dim}")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return PureStateVector(v / np.linalg.norm(v))


def random_unitary(dim: int, seed) -> np.ndarray:
    """Haar-random unitary (QR of a complex Ginibre matrix, phases fixed)."""
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_mixed(dim: int, rank: int, seed) -> DensityMatrix:
    """Random mixed state with exact numerical rank.

    The spectrum is a uniform simplex sample (resampled away from the rank
    threshold) and the eigenbasis is Haar-random.
    """
    if not 1 <= rank <= dim:
        raise InvalidInputError(f"rank must lie in [1, {dim}], got {rank}")
    rng = np.random.default_rng(seed)
    spectrum = rng.dirichlet(np.ones(rank))
    while rank > 1 and spectrum.min() < 1e-6:
        spectrum = rng.dirichlet(np.ones(rank))
    basis = random_unitary(dim, rng)[:, :rank]
    return DensityMatrix((basis * spectrum) @ basis.conj().T)


def random_commuting_pair(dim: int, seed) -> tuple[DensityMatrix, DensityMatrix]:
    """Two distinct, non-orthogonal states diagonal in a common random basis.

    Both spectra have full support, so the states commute exactly, overlap
    (tr(rho rho') > 0) and are resampled until clearly distinct.
    """
    if dim < 2:
        raise InvalidInputError(f"dim must be >= 2, got {dim}")
    rng = np.random.default_rng(seed)
    basis = random_unitary(dim, rng)
    while True:
        p = rng.dirichlet(np.ones(dim))
        q = rng.dirichlet(np.ones(dim))
        if min(p.min(), q.min()) < 1e-4:
            continue
        # diagonal in a shared basis: trace distance and overlap are classical
        if 0.5 * np.abs(p - q).sum() < 1e-3 or float(p @ q) <= 1e-6:
            continue
        break
    rho = DensityMatrix((basis * p) @ basis.conj().T)
    rhop = DensityMatrix((basis * q) @ basis.conj().T)
    return rho, rhop


def figure_example(theta: float) -> Ensemble:
    """Equal-prior pair of four-dimensional states swept by an angle.

    First state: I/2 on the first qubit tensored with |0><0|. Second state:
    2/3 |0><0| (x) |+><+| + 1/3 |1><1| (x) |t><t| with |t> = cos(theta)|0>
    + sin(theta)|1>. At theta = 0 the two ranges share the vector |1>|0>.
    """
    if not 0.0 <= theta <= np.pi / 2:
        raise InvalidInputError(f"theta must lie in [0, pi/2], got {theta}")
    ket0 = np.array([1.0, 0.0])
    ket1 = np.array([0.0, 1.0])
    plus = (ket0 + ket1) / np.sqrt(2)
    tilted = np.cos(theta) * ket0 + np.sin(theta) * ket1
    proj = lambda v: np.outer(v, v.conj())
    rho = 0.5 * np.kron(proj(ket0) + proj(ket1), proj(ket0))
    rhop = (2.0 / 3.0) * np.kron(proj(ket0), proj(plus)) + (1.0 / 3.0) * np.kron(
        proj(ket1), proj(tilted)
    )
    return Ensemble.pair(DensityMatrix(rho), DensityMatrix(rhop), eta=0.5)
