"""CPTP maps as Kraus-operator lists, plus the pure-output constructions.

Besides the generic plumbing (validation, application, composition,
random channels), this module builds two channels that exist for every
admissible input but need explicit Kraus realizations:

* ``pure_pair_contraction``: maps two given pure states onto two given
  pure targets whose overlap is at least as large as the sources'.
* ``equal_distance_pure_outputs``: maps two arbitrary states onto pure
  states whose trace distance equals the worst-case distinguishability
  of the inputs, the best any pure-output map can do.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import linalg
from .errors import (
    ConstructionError,
    DimensionMismatchError,
    InfeasibleTargetError,
    InvalidChannelError,
    InvalidInputError,
)
from .metrics import canonical_angles, trace_distance, wcd
from .states import DensityMatrix, PureStateVector, _frozen_array

TP_TOL = 1e-8

# below this residual norm two unit vectors are treated as the same ray
_DEGENERATE_TOL = 1e-8


def is_cptp(kraus, tol: float = TP_TOL) -> tuple[bool, float]:
    """Whether a Kraus list is trace preserving; returns the defect norm.

    Complete positivity is automatic for any Kraus form, so the only
    condition checked is sum(K^dag K) = I in Frobenius norm.
    """
    mats = [linalg.as_matrix(k, "kraus operator") for k in kraus]
    if not mats:
        raise InvalidInputError("empty Kraus list")
    shape = mats[0].shape
    if any(m.shape != shape for m in mats):
        raise DimensionMismatchError("Kraus operators have inconsistent shapes")
    total = sum(linalg.dag(m) @ m for m in mats)
    defect = float(np.linalg.norm(total - np.eye(shape[1])))
    return defect <= tol, defect


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """CPTP map given by a finite list of out_dim x in_dim Kraus operators."""

    kraus: tuple
    in_dim: int
    out_dim: int

    def __post_init__(self):
        mats = tuple(_frozen_array(linalg.as_matrix(k, "kraus operator")) for k in self.kraus)
        if not mats:
            raise InvalidChannelError("channel needs at least one Kraus operator")
        shape = (self.out_dim, self.in_dim)
        if any(m.shape != shape for m in mats):
            raise DimensionMismatchError(
                f"Kraus operators must all have shape {shape}"
            )
        ok, defect = is_cptp(mats, TP_TOL)
        if not ok:
            raise InvalidChannelError(
                f"Kraus list is not trace preserving (defect {defect:.3e})"
            )
        object.__setattr__(self, "kraus", mats)

    @classmethod
    def from_kraus(cls, kraus) -> "KrausChannel":
        mats = [linalg.as_matrix(k, "kraus operator") for k in kraus]
        if not mats:
            raise InvalidChannelError("channel needs at least one Kraus operator")
        out_dim, in_dim = mats[0].shape
        return cls(kraus=tuple(mats), in_dim=in_dim, out_dim=out_dim)

    def apply(self, rho: DensityMatrix) -> DensityMatrix:
        """sum_k K rho K^dag as a validated state."""
        if rho.dim != self.in_dim:
            raise DimensionMismatchError(
                f"channel expects dim {self.in_dim}, state has dim {rho.dim}"
            )
        out = sum(k @ rho.matrix @ linalg.dag(k) for k in self.kraus)
        return DensityMatrix(out)

    def tp_defect(self) -> float:
        return is_cptp(self.kraus)[1]


def compose(outer: KrausChannel, inner: KrausChannel) -> KrausChannel:
    """Channel applying `inner` first, then `outer`."""
    if inner.out_dim != outer.in_dim:
        raise DimensionMismatchError(
            f"cannot compose: inner output dim {inner.out_dim} != outer input dim {outer.in_dim}"
        )
    kraus = [ko @ ki for ko in outer.kraus for ki in inner.kraus]
    return KrausChannel(kraus=tuple(kraus), in_dim=inner.in_dim, out_dim=outer.out_dim)


def constant_channel(target: PureStateVector, in_dim: int) -> KrausChannel:
    """Channel sending every input state to the given pure state."""
    phi = target.amplitudes
    kraus = [np.outer(phi, e.conj()) for e in np.eye(in_dim, dtype=complex)]
    return KrausChannel(kraus=tuple(kraus), in_dim=in_dim, out_dim=phi.size)


def tensor_with_state(sigma: DensityMatrix, in_dim: int) -> KrausChannel:
    """Faithful product channel rho -> rho (x) sigma.

    Kraus operators are sqrt(mu_k) (I (x) |v_k>) built from the spectral
    decomposition of sigma, so the partial trace over the appended factor
    returns the input exactly.
    """
    eig = linalg.hermitian_eig(sigma.matrix)
    eye = np.eye(in_dim, dtype=complex)
    kraus = []
    for mu, v in zip(eig.eigenvalues, eig.eigenvectors.T):
        if mu <= 0.0:
            continue
        kraus.append(np.sqrt(mu) * np.kron(eye, v.reshape(-1, 1)))
    return KrausChannel(
        kraus=tuple(kraus), in_dim=in_dim, out_dim=in_dim * sigma.dim
    )


def random_channel(in_dim: int, out_dim: int, kraus_count: int, seed) -> KrausChannel:
    """Random CPTP map from Haar isometry blocks; deterministic per seed."""
    if in_dim < 1 or out_dim < 1 or kraus_count < 1:
        raise InvalidInputError("dimensions and kraus_count must be >= 1")
    if out_dim * kraus_count < in_dim:
        raise InvalidInputError(
            f"no isometry into {kraus_count} blocks of dim {out_dim} from dim {in_dim}"
        )
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((out_dim * kraus_count, in_dim)) + 1j * rng.standard_normal(
        (out_dim * kraus_count, in_dim)
    )
    q, _ = np.linalg.qr(z)
    kraus = [q[j * out_dim : (j + 1) * out_dim, :] for j in range(kraus_count)]
    return KrausChannel(kraus=tuple(kraus), in_dim=in_dim, out_dim=out_dim)


def _pair_frame(a: np.ndarray, b: np.ndarray):
    """Orthonormal frame (u1, w) for span{a, b} with real overlap coordinates.

    Returns (u1, w, c, s) such that a is u1 up to phase and b = c u1 + s w
    with c >= 0 and s > 0 real. For (numerically) parallel vectors w is
    None and s is 0. Gram-Schmidt is safe here: the residual b - c u1 has
    norm s, so the relative error of w stays ~eps/s, negligible for every
    s above the degeneracy cutoff.
    """
    overlap = np.vdot(a, b)
    phase = np.exp(1j * np.angle(overlap)) if abs(overlap) > 0 else 1.0
    u1 = phase * a
    c = float(np.vdot(u1, b).real)
    residual = b - c * u1
    s = float(np.linalg.norm(residual))
    if s < _DEGENERATE_TOL:
        return u1, None, min(abs(c), 1.0), 0.0
    w = residual / s
    w = w - np.vdot(u1, w) * u1
    w = w / np.linalg.norm(w)
    c = float(np.vdot(u1, b).real)
    s = float(np.vdot(w, b).real)
    return u1, w, c, s


def _contraction_xy(c_src: float, s_src: float, c_tgt: float, s_tgt: float):
    """Kraus coefficients for a two-point contraction in paired frames.

    With sources at real overlap coordinates (c_src, s_src) and targets at
    (c_tgt, s_tgt), the two Kraus operators

        K1 = f1 u1^dag + x f2 w^dag,   K2 = y Phi' w^dag

    map u1 exactly onto Phi and the second source exactly onto a multiple
    of Phi' provided x = (c_src s_tgt) / (s_src c_tgt); defining
    y = sqrt(1 - x^2) then makes K1^dag K1 + K2^dag K2 the identity on the
    span. Feasibility (x <= 1) is exactly the condition that the target
    overlap is at least the source overlap.
    """
    if c_tgt < 1e-12:
        # orthogonal targets force orthogonal sources; a relabeling suffices
        return 1.0, 0.0
    x = min(1.0, (c_src * s_tgt) / (s_src * c_tgt))
    y = float(np.sqrt(max(0.0, 1.0 - x * x)))
    return x, y


def _complement_basis(used: list[np.ndarray], dim: int) -> np.ndarray:
    if not used:
        return np.eye(dim, dtype=complex)
    stacked = np.column_stack(used)
    return scipy.linalg.null_space(linalg.dag(stacked))


def pure_pair_contraction(
    a: PureStateVector,
    b: PureStateVector,
    phi: PureStateVector,
    phi_prime: PureStateVector,
    overlap_tol: float = 1e-10,
) -> KrausChannel:
    """Channel mapping |a> to |phi> and |b> to |phi_prime|, exactly.

    Exists precisely when |<phi|phi_prime>| >= |<a|b>|: a deterministic
    process can only decrease the distance of two pure states. The
    construction works in the two orthonormal frames spanned by the source
    and target pairs (see ``_contraction_xy``); everything outside
    span{a, b} is sent to |phi>. The result is verified post hoc and a
    ConstructionError is raised if the verification fails.
    """
    if a.dim != b.dim:
        raise DimensionMismatchError(f"source dims differ: {a.dim} vs {b.dim}")
    if phi.dim != phi_prime.dim:
        raise DimensionMismatchError(
            f"target dims differ: {phi.dim} vs {phi_prime.dim}"
        )
    c_src = abs(np.vdot(a.amplitudes, b.amplitudes))
    c_tgt = abs(np.vdot(phi.amplitudes, phi_prime.amplitudes))
    if c_tgt < c_src - overlap_tol:
        raise InfeasibleTargetError(
            f"target overlap {c_tgt:.6f} below source overlap {c_src:.6f}: "
            "a deterministic map cannot increase the distance of pure states"
        )
    dim_in, dim_out = a.dim, phi.dim
    u1, w, c_s, s_s = _pair_frame(a.amplitudes, b.amplitudes)
    f1, f2, c_t, s_t = _pair_frame(phi.amplitudes, phi_prime.amplitudes)

    kraus = []
    used = [u1]
    if w is None:
        # parallel sources; feasibility forces (numerically) parallel targets
        kraus.append(np.outer(f1, u1.conj()))
    else:
        used.append(w)
        if f2 is None:
            # parallel targets: contract the whole source span onto phi
            kraus.append(np.outer(f1, u1.conj()))
            kraus.append(np.outer(f1, w.conj()))
        else:
            x, y = _contraction_xy(c_s, s_s, c_t, s_t)
            kraus.append(np.outer(f1, u1.conj()) + x * np.outer(f2, w.conj()))
            if y > 0.0:
                kraus.append(y * np.outer(phi_prime.amplitudes, w.conj()))
    comp = _complement_basis(used, dim_in)
    for j in range(comp.shape[1]):
        kraus.append(np.outer(f1, comp[:, j].conj()))

    channel = KrausChannel(kraus=tuple(kraus), in_dim=dim_in, out_dim=dim_out)
    err_a = np.linalg.norm(channel.apply(a.density()).matrix - phi.projector())
    err_b = np.linalg.norm(channel.apply(b.density()).matrix - phi_prime.projector())
    if max(err_a, err_b) > 1e-8 or channel.tp_defect() > 1e-9:
        raise ConstructionError(
            f"contraction channel failed verification: action errors "
            f"({err_a:.3e}, {err_b:.3e}), TP defect {channel.tp_defect():.3e}"
        )
    return channel


def equal_distance_pure_outputs(
    rho: DensityMatrix, sigma: DensityMatrix, rank_tol: float = linalg.RANK_TOL
) -> tuple[KrausChannel, PureStateVector, PureStateVector]:
    """Pure-output channel whose outputs sit exactly at the wcd distance.

    Any channel with pure outputs on both states must map them at least as
    close as the worst-case distinguishability; this construction attains
    the bound. The canonical bases of the two ranges split the space into
    mutually orthogonal blocks span{chi_i, chi'_i}; a block-projective
    measurement followed by a per-block two-point contraction sends every
    chi_i to a fixed Phi and every chi'_i to a fixed Phi' at overlap
    cos(smallest angle). Cross-block coherences are annihilated by the
    block measurement, so linearity gives pure outputs on both ranges.
    Residual range vectors from a rank mismatch go to Phi (rho side) or
    Phi' (sigma side); the orthocomplement goes to Phi.
    """
    if rho.dim != sigma.dim:
        raise DimensionMismatchError(f"state dims differ: {rho.dim} vs {sigma.dim}")
    dim = rho.dim
    ca = canonical_angles(rho, sigma, rank_tol)

    blocks = []
    used: list[np.ndarray] = []
    for i in range(ca.basis_a.shape[1]):
        u1, w, c, s = _pair_frame(ca.basis_a[:, i], ca.basis_b[:, i])
        blocks.append((u1, w, c, s))
        used.append(u1)
        if w is not None:
            used.append(w)
    residual_a = [ca.residual_a[:, j] for j in range(ca.residual_a.shape[1])]
    residual_b = [ca.residual_b[:, j] for j in range(ca.residual_b.shape[1])]
    used.extend(residual_a)
    used.extend(residual_b)

    # target pair anchored to the closest block so its contraction is exact;
    # (c_star, s_star) = (cos, sin) of the smallest canonical angle
    if blocks:
        c_star, s_star = blocks[0][2], blocks[0][3]
        scale = np.hypot(c_star, s_star)
        c_star, s_star = c_star / scale, s_star / scale
    else:
        c_star, s_star = 1.0, 0.0
    phi_vec = np.zeros(dim, dtype=complex)
    phi_vec[0] = 1.0
    phip_vec = phi_vec.copy()
    if dim > 1:
        phip_vec = np.zeros(dim, dtype=complex)
        phip_vec[0] = c_star
        phip_vec[1] = s_star
    f2 = np.zeros(dim, dtype=complex)
    if dim > 1:
        f2[1] = 1.0

    kraus = []
    for u1, w, c, s in blocks:
        if w is None:
            kraus.append(np.outer(phi_vec, u1.conj()))
            continue
        x, y = _contraction_xy(c, s, c_star, s_star) if s_star > 0.0 else (0.0, 1.0)
        kraus.append(np.outer(phi_vec, u1.conj()) + x * np.outer(f2, w.conj()))
        if y > 0.0:
            kraus.append(y * np.outer(phip_vec, w.conj()))
    for v in residual_a:
        kraus.append(np.outer(phi_vec, v.conj()))
    for v in residual_b:
        kraus.append(np.outer(phip_vec, v.conj()))
    comp = _complement_basis(used, dim)
    for j in range(comp.shape[1]):
        kraus.append(np.outer(phi_vec, comp[:, j].conj()))

    channel = KrausChannel(kraus=tuple(kraus), in_dim=dim, out_dim=dim)
    phi = PureStateVector(phi_vec)
    phip = PureStateVector(phip_vec / np.linalg.norm(phip_vec))

    out_a = channel.apply(rho)
    out_b = channel.apply(sigma)
    err_a = np.linalg.norm(out_a.matrix - phi.projector())
    err_b = np.linalg.norm(out_b.matrix - phip.projector())
    gap = abs(trace_distance(out_a, out_b) - wcd(rho, sigma, rank_tol))
    # gates at the contract level: near-degenerate smallest angles sit a
    # sqrt(eps) ~ 1e-8 apart from the recomputed wcd by roundoff alone
    if max(err_a, err_b) > 1e-7 or gap > 1e-7 or channel.tp_defect() > 1e-8:
        raise ConstructionError(
            f"equal-distance channel failed verification: action errors "
            f"({err_a:.3e}, {err_b:.3e}), distance gap {gap:.3e}, "
            f"TP defect {channel.tp_defect():.3e}"
        )
    return channel, phi, phip
