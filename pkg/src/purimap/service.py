"""HTTP face of the purifiability toolkit.

A small stateless JSON API wrapping the numerical core: two-state
purifiability checks, the faithfulness-bound sweep as CSV, and the seeded
property-test suites. The CLI drives this app in process, so every
user-facing operation goes through the same request/response models.
"""

from __future__ import annotations

import math

from fastapi import FastAPI, HTTPException
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel, Field

from . import serialize
from .errors import InvalidInputError
from .purification import (
    can_purify_perfectly,
    delta_bounds,
    orthogonal_union_decomposition,
    sweep_rows,
)
from .states import Ensemble
from .suites import run_suite

SWEEP_HEADER = "theta,trace_distance,wcd,fidelity,lower,upper_const,upper_uhlmann"


def format_number(x: float) -> str:
    """Decimal with at most 12 significant digits; reproducible across runs."""
    return format(float(x), ".12g")


class MatrixPayload(BaseModel):
    dim: int = Field(ge=1)
    entries: list[list[list[float]]]


class BoundsPayload(BaseModel):
    lower: float
    upper_const: float
    upper_uhlmann: float
    eta_used: float


class CheckRequest(BaseModel):
    state_a: MatrixPayload
    state_b: MatrixPayload
    eta: float = Field(default=0.5, gt=0.0, lt=1.0)
    tol: float = Field(default=1e-7, gt=0.0)


class CheckResponse(BaseModel):
    verdict: str
    trace_distance: float
    wcd: float
    components: list[list[int]]
    certificate: dict | None
    bounds: BoundsPayload


class SweepRequest(BaseModel):
    theta_min: float = 0.0
    theta_max: float = math.pi / 2
    steps: int = Field(default=200, ge=2)


class ProptestRequest(BaseModel):
    suite: str
    trials: int = Field(default=100, ge=1)
    seed: int = 0


class ProptestResponse(BaseModel):
    suite: str
    trials: int
    seed: int
    checked: int
    passed: bool
    failure_count: int
    counterexamples: list[dict]


app = FastAPI(
    title="purimap",
    description="Purifiability analysis for mixed quantum states",
    version="0.1.0",
)


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/check", response_model=CheckResponse)
def check(request: CheckRequest) -> CheckResponse:
    try:
        state_a = serialize.state_from_json(request.state_a.model_dump())
        state_b = serialize.state_from_json(request.state_b.model_dump())
    except InvalidInputError as exc:
        raise HTTPException(
            status_code=422, detail={"error": "invalid_state", "message": str(exc)}
        ) from None
    if state_a.dim != state_b.dim:
        raise HTTPException(
            status_code=422,
            detail={
                "error": "dimension_mismatch",
                "message": f"state dims differ: {state_a.dim} vs {state_b.dim}",
            },
        )
    verdict = can_purify_perfectly(state_a, state_b, request.tol)
    components = orthogonal_union_decomposition(Ensemble.pair(state_a, state_b, request.eta))
    bounds = delta_bounds(state_a, state_b, request.eta, 1.0 - request.eta)
    body = serialize.verdict_to_json(
        verdict,
        trace_distance=verdict.diagnostics["trace_distance"],
        wcd=verdict.diagnostics["wcd"],
        components=components,
    )
    body["bounds"] = serialize.bounds_to_json(bounds)
    return CheckResponse(**body)


@app.post("/sweep", response_class=PlainTextResponse)
def sweep(request: SweepRequest) -> PlainTextResponse:
    try:
        rows = sweep_rows(request.theta_min, request.theta_max, request.steps)
    except InvalidInputError as exc:
        raise HTTPException(
            status_code=422, detail={"error": "invalid_range", "message": str(exc)}
        ) from None
    lines = [SWEEP_HEADER]
    for row in rows:
        lines.append(
            ",".join(
                format_number(v)
                for v in (
                    row.theta,
                    row.trace_distance,
                    row.wcd,
                    row.fidelity,
                    row.lower,
                    row.upper_const,
                    row.upper_uhlmann,
                )
            )
        )
    return PlainTextResponse("\n".join(lines) + "\n", media_type="text/csv")


@app.post("/proptest", response_model=ProptestResponse)
def proptest(request: ProptestRequest) -> ProptestResponse:
    try:
        report = run_suite(request.suite, request.trials, request.seed)
    except InvalidInputError as exc:
        raise HTTPException(
            status_code=422, detail={"error": "unknown_suite", "message": str(exc)}
        ) from None
    return ProptestResponse(**report)
