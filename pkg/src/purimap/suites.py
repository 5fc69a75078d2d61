"""Seeded property-test suites runnable from the service and the CLI.

Each suite draws `trials` random instances from a seeded generator,
checks one invariant and reports failures with serialized
counterexamples. Reports are deterministic for a fixed (suite, trials,
seed) triple.
"""

from __future__ import annotations

import numpy as np

from . import serialize
from .channels import equal_distance_pure_outputs, random_channel, tensor_with_state
from .errors import InvalidInputError
from .metrics import fidelity, trace_distance, wcd
from .oracles import wcd_bruteforce
from .purification import (
    VERDICT_NO,
    VERDICT_YES,
    can_purify_perfectly,
    max_purification_overlap,
    purify_state,
    random_essentially_pure_pair,
)
from .states import DensityMatrix, purity, random_commuting_pair, random_mixed
from .linalg import partial_trace

_MAX_COUNTEREXAMPLES = 3


def _report(name: str, trials: int, seed: int, failures: list, checked: int) -> dict:
    return {
        "suite": name,
        "trials": trials,
        "seed": seed,
        "checked": checked,
        "passed": not failures,
        "failure_count": len(failures),
        "counterexamples": failures[:_MAX_COUNTEREXAMPLES],
    }


def _random_pair(rng, dim: int, max_rank: int | None = None):
    top = dim if max_rank is None else max_rank
    a = random_mixed(dim, int(rng.integers(1, top + 1)), rng)
    b = random_mixed(dim, int(rng.integers(1, top + 1)), rng)
    return a, b


def suite_data_processing(trials: int, seed: int) -> dict:
    """Trace distance never grows under a channel (1e-9 slack)."""
    rng = np.random.default_rng(seed)
    failures = []
    for _ in range(trials):
        din = int(rng.integers(2, 5))
        dout = int(rng.integers(2, 5))
        low = max(1, -(-din // dout))  # ceil(din / dout)
        nk = int(rng.integers(low, low + 3))
        channel = random_channel(din, dout, nk, rng)
        a, b = _random_pair(rng, din)
        before = trace_distance(a, b)
        after = trace_distance(channel.apply(a), channel.apply(b))
        if after > before + 1e-9:
            failures.append(
                {
                    "channel": serialize.channel_to_json(channel),
                    "state_a": serialize.state_to_json(a),
                    "state_b": serialize.state_to_json(b),
                    "before": before,
                    "after": after,
                }
            )
    return _report("data-processing", trials, seed, failures, trials)


def suite_dim_nogo(trials: int, seed: int) -> dict:
    """No YES verdicts for random rank >= 2 pairs in dimensions 2 and 3."""
    rng = np.random.default_rng(seed)
    failures = []
    checked = 0
    for dim in (2, 3):
        for _ in range(trials):
            a = random_mixed(dim, int(rng.integers(2, dim + 1)), rng)
            b = random_mixed(dim, int(rng.integers(2, dim + 1)), rng)
            checked += 1
            verdict = can_purify_perfectly(a, b)
            if verdict.verdict == VERDICT_YES:
                failures.append(
                    {
                        "dim": dim,
                        "state_a": serialize.state_to_json(a),
                        "state_b": serialize.state_to_json(b),
                        "diagnostics": verdict.diagnostics,
                    }
                )
    return _report("dim-nogo", trials, seed, failures, checked)


def suite_purify_faithful(trials: int, seed: int) -> dict:
    """Square-root purification is faithful and pure (1e-10)."""
    rng = np.random.default_rng(seed)
    failures = []
    for _ in range(trials):
        dim = int(rng.integers(2, 9))
        rho = random_mixed(dim, int(rng.integers(1, dim + 1)), rng)
        psi = purify_state(rho)
        aux = psi.dim // dim
        recovered = partial_trace(psi.projector(), (dim, aux), keep="A")
        err = float(np.linalg.norm(recovered - rho.matrix))
        out_purity = purity(psi.density())
        if err > 1e-10 or out_purity < 1.0 - 1e-10:
            failures.append(
                {
                    "state": serialize.state_to_json(rho),
                    "recovery_error": err,
                    "purity": out_purity,
                }
            )
    return _report("purify-faithful", trials, seed, failures, trials)


def suite_equal_distance(trials: int, seed: int) -> dict:
    """Equality-achieving construction: pure outputs exactly at wcd."""
    rng = np.random.default_rng(seed)
    failures = []
    for _ in range(trials):
        a, b = _random_pair(rng, 4, max_rank=2)
        channel, phi, phip = equal_distance_pure_outputs(a, b)
        out_a, out_b = channel.apply(a), channel.apply(b)
        gap = abs(trace_distance(out_a, out_b) - wcd(a, b))
        impure = max(1.0 - purity(out_a), 1.0 - purity(out_b))
        defect = channel.tp_defect()
        if gap > 1e-7 or impure > 1e-7 or defect > 1e-8:
            failures.append(
                {
                    "state_a": serialize.state_to_json(a),
                    "state_b": serialize.state_to_json(b),
                    "distance_gap": gap,
                    "impurity": impure,
                    "tp_defect": defect,
                }
            )
    return _report("equal-distance", trials, seed, failures, trials)


def suite_wcd_oracle(trials: int, seed: int) -> dict:
    """Canonical-angle wcd agrees with brute-force minimization (1e-4)."""
    rng = np.random.default_rng(seed)
    failures = []
    for _ in range(trials):
        a = random_mixed(4, 2, rng)
        b = random_mixed(4, 2, rng)
        fast = wcd(a, b)
        slow = wcd_bruteforce(a, b)
        if abs(fast - slow) > 1e-4:
            failures.append(
                {
                    "state_a": serialize.state_to_json(a),
                    "state_b": serialize.state_to_json(b),
                    "wcd": fast,
                    "bruteforce": slow,
                }
            )
    return _report("wcd-oracle", trials, seed, failures, trials)


def suite_uhlmann_overlap(trials: int, seed: int) -> dict:
    """Maximal purification overlap equals the fidelity (1e-8)."""
    rng = np.random.default_rng(seed)
    failures = []
    for _ in range(trials):
        dim = int(rng.integers(2, 5))
        a, b = _random_pair(rng, dim)
        gap = abs(max_purification_overlap(a, b) - fidelity(a, b))
        if gap > 1e-8:
            failures.append(
                {
                    "state_a": serialize.state_to_json(a),
                    "state_b": serialize.state_to_json(b),
                    "gap": gap,
                }
            )
    return _report("uhlmann-overlap", trials, seed, failures, trials)


def suite_purity_no_increase(trials: int, seed: int) -> dict:
    """Faithful product channels never increase purity (1e-12)."""
    rng = np.random.default_rng(seed)
    failures = []
    for _ in range(trials):
        dim = int(rng.integers(2, 5))
        aux = int(rng.integers(1, 4))
        rho = random_mixed(dim, int(rng.integers(1, dim + 1)), rng)
        sigma = random_mixed(aux, int(rng.integers(1, aux + 1)), rng)
        channel = tensor_with_state(sigma, dim)
        gain = purity(channel.apply(rho)) - purity(rho)
        if gain > 1e-12:
            failures.append(
                {
                    "state": serialize.state_to_json(rho),
                    "appended": serialize.state_to_json(sigma),
                    "purity_gain": gain,
                }
            )
    return _report("purity-no-increase", trials, seed, failures, trials)


def suite_pure_output_constant(trials: int, seed: int) -> dict:
    """Distinct pure outputs force an impure midpoint output."""
    rng = np.random.default_rng(seed)
    failures = []
    checked = 0
    for _ in range(trials):
        a, b = _random_pair(rng, 4, max_rank=2)
        channel, _, _ = equal_distance_pure_outputs(a, b)
        out_a, out_b = channel.apply(a), channel.apply(b)
        if trace_distance(out_a, out_b) <= 1e-6:
            continue
        checked += 1
        midpoint = DensityMatrix((a.matrix + b.matrix) / 2)
        mid_purity = purity(channel.apply(midpoint))
        if mid_purity >= 1.0 - 1e-8:
            failures.append(
                {
                    "state_a": serialize.state_to_json(a),
                    "state_b": serialize.state_to_json(b),
                    "midpoint_purity": mid_purity,
                }
            )
    return _report("pure-output-constant", trials, seed, failures, checked)


def suite_commuting_no(trials: int, seed: int) -> dict:
    """Commuting, distinct, non-orthogonal pairs are never purifiable."""
    rng = np.random.default_rng(seed)
    failures = []
    for _ in range(trials):
        dim = int(rng.integers(2, 5))
        a, b = random_commuting_pair(dim, rng)
        verdict = can_purify_perfectly(a, b)
        if verdict.verdict != VERDICT_NO:
            failures.append(
                {
                    "state_a": serialize.state_to_json(a),
                    "state_b": serialize.state_to_json(b),
                    "verdict": verdict.verdict,
                    "diagnostics": verdict.diagnostics,
                }
            )
    return _report("commuting-no", trials, seed, failures, trials)


def suite_essentially_pure_yes(trials: int, seed: int) -> dict:
    """Certificate-built pairs pass the operational test and their identity."""
    rng = np.random.default_rng(seed)
    failures = []
    for _ in range(trials):
        a, b, certificate = random_essentially_pure_pair(rng)
        verdict = can_purify_perfectly(a, b)
        defect = certificate.defect([a, b])
        if verdict.verdict != VERDICT_YES or defect > 1e-8:
            failures.append(
                {
                    "state_a": serialize.state_to_json(a),
                    "state_b": serialize.state_to_json(b),
                    "verdict": verdict.verdict,
                    "certificate_defect": defect,
                }
            )
    return _report("essentially-pure-yes", trials, seed, failures, trials)


SUITES = {
    "data-processing": suite_data_processing,
    "dim-nogo": suite_dim_nogo,
    "purify-faithful": suite_purify_faithful,
    "equal-distance": suite_equal_distance,
    "wcd-oracle": suite_wcd_oracle,
    "uhlmann-overlap": suite_uhlmann_overlap,
    "purity-no-increase": suite_purity_no_increase,
    "pure-output-constant": suite_pure_output_constant,
    "commuting-no": suite_commuting_no,
    "essentially-pure-yes": suite_essentially_pure_yes,
}


def run_suite(name: str, trials: int, seed: int) -> dict:
    if name not in SUITES:
        known = ", ".join(sorted(SUITES))
        raise InvalidInputError(f"unknown suite {name!r}; known suites: {known}")
    if trials < 1:
        raise InvalidInputError(f"trials must be >= 1, got {trials}")
    return SUITES[name](trials, seed)
