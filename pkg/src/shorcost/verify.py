"""Invariant suites behind ``shorcost verify``.

Each suite returns (ok, detail). They compare simulated circuits against
brute-force classical oracles and the abstract cost model.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .abstract_cost import CostParams, toffolis_per_lookup_addition
from .sim import (
    PostProcessingFailure,
    SimParams,
    build_cuccaro_adder,
    build_lookup_addition,
    build_runway_fold,
    build_windowed_modexp,
    count_resources,
    recover_factors_from_sum,
    simulate_batch,
)
from .sim.coset import RunwayLayout

MODEXP_MODULI = (15, 21, 33, 35, 55, 77)
CROSS_CHECK_SLACK = 8


def check_adders(max_n: int = 6):
    for n in range(1, max_n + 1):
        a, b = np.meshgrid(np.arange(1 << n), np.arange(1 << (n + 1)), indexing="ij")
        a, b = a.ravel(), b.ravel()
        out = simulate_batch(build_cuccaro_adder(n), {"a": a, "b": b})
        if not (out["b"] == (a + b) % (1 << (n + 1))).all() or not (out["a"] == a).all():
            return False, f"uncontrolled adder wrong at n={n}"
        for ctrl in (0, 1):
            out = simulate_batch(build_cuccaro_adder(n, controlled=True),
                                 {"a": a, "b": b, "ctrl": np.full(a.size, ctrl)})
            if not (out["b"] == (a * ctrl + b) % (1 << (n + 1))).all():
                return False, f"controlled adder wrong at n={n}, ctrl={ctrl}"
    return True, f"exhaustive for n <= {max_n}"


def check_lookup_addition(address_width: int = 4, target_width: int = 4):
    rng = np.random.default_rng(7)
    table = [int(v) for v in rng.integers(0, 1 << target_width, size=1 << address_width)]
    circ = build_lookup_addition(table, address_width, target_width)
    addr, tgt = np.meshgrid(np.arange(1 << address_width), np.arange(1 << target_width), indexing="ij")
    addr, tgt = addr.ravel(), tgt.ravel()
    out = simulate_batch(circ, {"address": addr, "target": tgt})
    want = (tgt + np.array(table)[addr]) % (1 << target_width)
    clean = all((out[r] == 0).all() for r in ("lookup", "work", "carry"))
    return bool((out["target"] == want).all() and clean), f"{addr.size} address/target pairs"


def check_fold_roundtrip():
    layout = RunwayLayout(8, 4, 2)
    circ = build_runway_fold(layout, unfold_too=True)
    states = np.arange(1 << layout.total_bits)
    main, runways = states & 0xFF, states >> 8
    out = simulate_batch(circ, {"main": main, "runways": runways})
    ok = (out["main"] == main).all() and (out["runways"] == runways).all() and (out["folded"] == 0).all()
    return bool(ok), f"{states.size} states"


def check_modexp(moduli=MODEXP_MODULI, samples: int = 40, c_pad: int = 6, seed: int = 0):
    """Zero-offset lanes must be exact; random offsets may fail up to the bound."""
    rng = np.random.default_rng(seed)
    params = SimParams(c_exp=2, c_mul=2, c_pad=c_pad)
    details = []
    for N in moduli:
        mc = build_windowed_modexp(2, N, N.bit_length(), params, n_e=8)
        exps = np.arange(256)
        oracle = np.array([pow(2, int(e), N) for e in exps])
        if not (mc.run(exps) == oracle).all():
            return False, f"N={N}: zero-offset result differs from pow"
        lanes = np.repeat(exps, samples)
        jx = rng.integers(0, 1 << c_pad, size=lanes.size)
        jy = rng.integers(0, 1 << c_pad, size=lanes.size)
        failure = float(np.mean(mc.run(lanes, jx, jy) != oracle[lanes]))
        if failure > mc.deviation_bound():
            return False, f"N={N}: failure {failure:.4f} above bound {mc.deviation_bound():.4f}"
        details.append(f"N={N}:{failure:.3f}<={mc.deviation_bound():.3f}")
    return True, " ".join(details)


def cross_check_matrix():
    """(n, c_exp, c_mul, c_pad, c_sep) combinations used for gate-count checks."""
    for n, c_exp, c_mul, c_pad in itertools.product((4, 6, 8, 12), (1, 2, 3), (1, 2, 3), (1, 2, 4, 6)):
        for c_sep in sorted({n, n // 2, n // 3}):
            if c_sep and n % c_sep == 0:
                yield n, c_exp, c_mul, c_pad, c_sep


def lookup_addition_gap(n, c_exp, c_mul, c_pad, c_sep) -> float:
    """Counted Toffolis of one lookup addition minus the abstract per-addition term."""
    w = c_exp + c_mul
    circ = build_lookup_addition([1] * (1 << w), w, n + c_pad, value_width=n,
                                 c_sep=c_sep if c_sep < n else None, c_pad=c_pad)
    counted = count_resources(circ).toffolis
    model = toffolis_per_lookup_addition(n, CostParams(c_exp=c_exp, c_mul=c_mul, c_sep=c_sep), c_pad)
    return float(counted - model)


def check_gate_counts():
    worst = max(abs(lookup_addition_gap(*combo)) for combo in cross_check_matrix())
    return worst <= CROSS_CHECK_SLACK, f"largest gap {worst:g} (allowed {CROSS_CHECK_SLACK})"


def semiprimes_below(limit: int):
    sieve = np.ones(limit, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i::i] = False
    primes = np.nonzero(sieve)[0].tolist()
    for i, p in enumerate(primes):
        for q in primes[i:]:
            if p * q >= limit:
                break
            yield p, q


def check_factor_recovery(limit: int = 10_000):
    count = 0
    for p, q in semiprimes_below(limit):
        try:
            if recover_factors_from_sum(p + q, p * q) != (p, q):
                return False, f"wrong roots for N={p * q}"
        except PostProcessingFailure:
            return False, f"no roots for N={p * q}"
        count += 1
    return True, f"{count} semiprimes below {limit}"


def run_suites(quick: bool = False):
    suites = [
        ("adders", lambda: check_adders(4 if quick else 6)),
        ("lookup-addition", check_lookup_addition),
        ("runway-fold", check_fold_roundtrip),
        ("windowed-modexp", lambda: check_modexp(MODEXP_MODULI[:2] if quick else MODEXP_MODULI,
                                                 samples=8 if quick else 40)),
        ("gate-counts", check_gate_counts),
        ("factor-recovery", lambda: check_factor_recovery(1000 if quick else 10_000)),
    ]
    results = []
    for name, fn in suites:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashing suite is a failing suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append((name, ok, detail))
    return results
