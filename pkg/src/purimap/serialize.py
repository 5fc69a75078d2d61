"""JSON wire formats for states, ensembles, channels and verdicts.

Complex matrices travel as {"dim": n, "entries": [[[re, im], ...], ...]}
with a dim x dim grid of [re, im] pairs; vectors as flat lists of
[re, im] pairs. Ensembles pair a prior list with a state list. Kraus
lists carry their (possibly rectangular) operators as raw entry grids
under explicit input/output dimensions.
"""

from __future__ import annotations

import numpy as np

from .channels import KrausChannel
from .errors import InvalidInputError
from .purification import DeltaBounds, EssentiallyPureCertificate, PurifiabilityVerdict
from .states import DensityMatrix, Ensemble, PureStateVector


def _entries_to_array(entries, rows: int, cols: int, name: str) -> np.ndarray:
    try:
        arr = np.asarray(entries, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"{name}: entries are not numeric: {exc}") from None
    if arr.shape != (rows, cols, 2):
        raise InvalidInputError(
            f"{name}: expected {rows}x{cols} grid of [re, im] pairs, got shape {arr.shape}"
        )
    return arr[..., 0] + 1j * arr[..., 1]


def _array_to_entries(a: np.ndarray) -> list:
    stacked = np.stack([a.real, a.imag], axis=-1)
    return stacked.tolist()


def matrix_to_json(a: np.ndarray) -> dict:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidInputError(f"only square matrices serialize here, got {a.shape}")
    return {"dim": int(a.shape[0]), "entries": _array_to_entries(a)}


def matrix_from_json(payload) -> np.ndarray:
    if not isinstance(payload, dict):
        raise InvalidInputError("matrix JSON must be an object")
    if "dim" not in payload or "entries" not in payload:
        raise InvalidInputError("matrix JSON needs 'dim' and 'entries' fields")
    dim = payload["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise InvalidInputError(f"matrix dim must be a positive integer, got {dim!r}")
    return _entries_to_array(payload["entries"], dim, dim, "matrix")


def state_to_json(rho: DensityMatrix) -> dict:
    return matrix_to_json(rho.matrix)


def state_from_json(payload) -> DensityMatrix:
    return DensityMatrix(matrix_from_json(payload))


def vector_to_json(v: np.ndarray) -> list:
    v = np.asarray(v, dtype=complex).reshape(-1)
    return [[float(x.real), float(x.imag)] for x in v]


def vector_from_json(payload) -> np.ndarray:
    arr = np.asarray(payload, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InvalidInputError("vector JSON must be a list of [re, im] pairs")
    return arr[:, 0] + 1j * arr[:, 1]


def ensemble_to_json(ensemble: Ensemble) -> dict:
    return {
        "priors": [float(p) for p in ensemble.priors],
        "states": [state_to_json(s) for s in ensemble.states],
    }


def ensemble_from_json(payload) -> Ensemble:
    if not isinstance(payload, dict) or "priors" not in payload or "states" not in payload:
        raise InvalidInputError("ensemble JSON needs 'priors' and 'states' fields")
    states = tuple(state_from_json(s) for s in payload["states"])
    return Ensemble(states=states, priors=np.asarray(payload["priors"], dtype=float))


def channel_to_json(channel: KrausChannel) -> dict:
    return {
        "in_dim": channel.in_dim,
        "out_dim": channel.out_dim,
        "kraus": [_array_to_entries(k) for k in channel.kraus],
    }


def channel_from_json(payload) -> KrausChannel:
    if not isinstance(payload, dict):
        raise InvalidInputError("channel JSON must be an object")
    for field in ("in_dim", "out_dim", "kraus"):
        if field not in payload:
            raise InvalidInputError(f"channel JSON needs the '{field}' field")
    in_dim, out_dim = payload["in_dim"], payload["out_dim"]
    kraus = [
        _entries_to_array(entries, out_dim, in_dim, f"kraus[{i}]")
        for i, entries in enumerate(payload["kraus"])
    ]
    return KrausChannel(kraus=tuple(kraus), in_dim=in_dim, out_dim=out_dim)


def bounds_to_json(bounds: DeltaBounds) -> dict:
    return {
        "lower": bounds.lower,
        "upper_const": bounds.upper_const,
        "upper_uhlmann": bounds.upper_uhlmann,
        "eta_used": bounds.eta_used,
    }


def certificate_to_json(certificate: EssentiallyPureCertificate) -> dict:
    return {
        "unitary": matrix_to_json(certificate.unitary),
        "aux_state": state_to_json(certificate.aux_state),
        "common_state": state_to_json(certificate.common_state),
        "pure_states": [vector_to_json(p.amplitudes) for p in certificate.pure_states],
        "dim_a": certificate.dim_a,
        "dim_b": certificate.dim_b,
    }


def certificate_from_json(payload) -> EssentiallyPureCertificate:
    return EssentiallyPureCertificate(
        unitary=matrix_from_json(payload["unitary"]),
        aux_state=state_from_json(payload["aux_state"]),
        common_state=state_from_json(payload["common_state"]),
        pure_states=tuple(
            PureStateVector(vector_from_json(v)) for v in payload["pure_states"]
        ),
        dim_a=payload["dim_a"],
        dim_b=payload["dim_b"],
    )


def verdict_to_json(
    verdict: PurifiabilityVerdict,
    trace_distance: float,
    wcd: float,
    components: list[list[int]],
) -> dict:
    return {
        "verdict": verdict.verdict,
        "trace_distance": trace_distance,
        "wcd": wcd,
        "components": components,
        "certificate": (
            certificate_to_json(verdict.certificate) if verdict.certificate else None
        ),
    }
