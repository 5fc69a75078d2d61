"""Command-line client for the purifiability service.

The CLI is a thin HTTP client. By default it mounts the FastAPI app in
process, so no server is needed; pass --server to talk to a running
instance instead (start one with `purimap serve`).

Exit codes for `check`: 0 = YES, 1 = NO, 2 = UNDETERMINED, 64 = parse
failure, 65 = dimension mismatch.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import math
import sys
from pathlib import Path

import httpx

_VERDICT_EXIT = {"YES": 0, "NO": 1, "UNDETERMINED": 2}


def _post(server: str | None, path: str, payload: dict) -> httpx.Response:
    if server:
        with httpx.Client(base_url=server, timeout=600.0) as client:
            return client.post(path, json=payload)

    from .service import app

    async def go() -> httpx.Response:
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://purimap.internal", timeout=600.0
        ) as client:
            return await client.post(path, json=payload)

    return asyncio.run(go())


def _error_kind(response: httpx.Response) -> str | None:
    try:
        detail = response.json().get("detail")
    except (json.JSONDecodeError, ValueError):
        return None
    if isinstance(detail, dict):
        return detail.get("error")
    return None


def _cmd_sweep(args) -> int:
    response = _post(
        args.server,
        "/sweep",
        {"theta_min": args.theta_min, "theta_max": args.theta_max, "steps": args.steps},
    )
    if response.status_code != 200:
        print(f"error: sweep rejected: {response.text}", file=sys.stderr)
        return 2
    try:
        Path(args.out).write_text(response.text, encoding="ascii")
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 1
    return 0


def _cmd_check(args) -> int:
    payloads = []
    for path in (args.file_a, args.file_b):
        try:
            payloads.append(json.loads(Path(path).read_text(encoding="utf-8")))
        except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
            print(f"error: cannot parse state file {path}: {exc}", file=sys.stderr)
            return 64
    response = _post(
        args.server,
        "/check",
        {
            "state_a": payloads[0],
            "state_b": payloads[1],
            "eta": args.eta,
            "tol": args.tol,
        },
    )
    if response.status_code != 200:
        kind = _error_kind(response)
        print(f"error: check rejected: {response.text}", file=sys.stderr)
        return 65 if kind == "dimension_mismatch" else 64
    body = response.json()
    print(json.dumps(body, indent=2, sort_keys=True))
    return _VERDICT_EXIT[body["verdict"]]


def _cmd_proptest(args) -> int:
    response = _post(
        args.server,
        "/proptest",
        {"suite": args.suite, "trials": args.trials, "seed": args.seed},
    )
    if response.status_code != 200:
        print(f"error: proptest rejected: {response.text}", file=sys.stderr)
        return 2
    report = response.json()
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0 if report["passed"] else 1


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def _eta(value: str) -> float:
    x = float(value)
    if not 0.0 < x < 1.0:
        raise argparse.ArgumentTypeError(f"eta must lie in (0, 1), got {x}")
    return x


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="purimap",
        description="Purifiability analysis for mixed quantum states",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="write the faithfulness-bound sweep as CSV")
    sweep.add_argument("--theta-min", type=float, default=0.0)
    sweep.add_argument("--theta-max", type=float, default=math.pi / 2)
    sweep.add_argument("--steps", type=int, default=200)
    sweep.add_argument("--out", required=True, help="output CSV path")
    sweep.set_defaults(handler=_cmd_sweep)

    check = sub.add_parser("check", help="two-state perfect-purifiability test")
    check.add_argument("file_a", help="JSON file with the first density matrix")
    check.add_argument("file_b", help="JSON file with the second density matrix")
    check.add_argument("--eta", type=_eta, default=0.5, help="prior of the first state")
    check.add_argument("--tol", type=float, default=1e-7)
    check.set_defaults(handler=_cmd_check)

    proptest = sub.add_parser("proptest", help="run a seeded property-test suite")
    proptest.add_argument("suite", help="suite name, e.g. data-processing")
    proptest.add_argument("--trials", type=int, default=100)
    proptest.add_argument("--seed", type=int, default=0)
    proptest.set_defaults(handler=_cmd_proptest)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(handler=_cmd_serve)

    for p in (sweep, check, proptest):
        p.add_argument(
            "--server",
            default=None,
            help="base URL of a running service (default: in-process app)",
        )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except httpx.HTTPError as exc:
        print(f"error: cannot reach service: {exc}", file=sys.stderr)
        return 69  # EX_UNAVAILABLE


if __name__ == "__main__":
    raise SystemExit(main())
