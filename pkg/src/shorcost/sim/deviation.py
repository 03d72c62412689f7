"""Empirical deviation of coset + runway additions against the analytic bound."""

from __future__ import annotations

from typing import Optional

import numpy as np

from ..error_budget import deviation_per_addition
from .arithmetic import append_piecewise_addition
from .circuit import Circuit, simulate_batch
from .coset import RunwayLayout, insert_runways_batch, remove_runways_batch
from .modexp import SimParams

DEFAULT_ADDITIONS = 20


def coset_layout(n: int, params: SimParams) -> RunwayLayout:
    width = n + params.c_pad
    c_sep = params.c_sep if params.c_sep is not None else width
    return RunwayLayout(width, c_sep, params.c_pad, data_bits=n)


def build_runway_adder(layout: RunwayLayout, value_bits: int, additions: int) -> Circuit:
    """Adds ``additions`` classical constants (cregs k0, k1, ...) into a runway register."""
    circ = Circuit()
    main = circ.add_register("main", layout.width)
    flat = circ.add_register("runways", layout.runway_count * layout.c_pad)
    value = circ.add_register("value", value_bits)
    carry = circ.add_register("carry", 1)[0]
    inc = circ.add_register("inc", max(0, layout.max_extension - 1))
    runways = [flat[i * layout.c_pad:(i + 1) * layout.c_pad] for i in range(layout.runway_count)]
    for a in range(additions):
        bits = circ.add_cregister(f"k{a}", value_bits)
        for q, b in zip(value, bits):
            circ.classical_x(q, [b])
        append_piecewise_addition(circ, value, main, runways, layout, carry, inc)
        for q, b in zip(value, bits):
            circ.classical_x(q, [b])
    return circ


def run_runway_additions(values: np.ndarray, addends: np.ndarray, layout: RunwayLayout,
                         rng: np.random.Generator) -> np.ndarray:
    """Encode with fresh runways, add each row of ``addends``, measure, decode.

    ``addends`` has shape (additions, lanes); the result is the reconstructed
    register value per lane.
    """
    values = np.asarray(values, dtype=np.int64)
    addends = np.atleast_2d(np.asarray(addends, dtype=np.int64))
    circ = build_runway_adder(layout, layout.data_bits, addends.shape[0])
    main, runways = insert_runways_batch(values, layout, rng)
    flat = np.zeros(len(values), dtype=np.int64)
    for i in range(layout.runway_count):
        flat |= runways[i] << (i * layout.c_pad)
    classical = {f"k{a}": addends[a] for a in range(addends.shape[0])}
    out = simulate_batch(circ, {"main": main, "runways": flat}, classical, lanes=len(values))
    mask = (1 << layout.c_pad) - 1
    measured = np.array([(out["runways"] >> (i * layout.c_pad)) & mask for i in range(layout.runway_count)],
                        dtype=np.int64).reshape(layout.runway_count, len(values))
    return remove_runways_batch(out["main"], measured, layout)


def deviation_bound(n: int, params: SimParams, additions: int) -> float:
    layout = coset_layout(n, params)
    c_sep = min(layout.c_sep, n)
    return min(1.0, additions * deviation_per_addition(n, c_sep, params.c_pad))


def measure_empirical_deviation(n: int, params: SimParams, trials: int,
                                additions: int = DEFAULT_ADDITIONS, seed: Optional[int] = 0,
                                modulus: Optional[int] = None) -> float:
    """Fraction of sampled runs whose decoded residue is wrong.

    Each trial draws a residue, a coset offset and runway values, then adds
    ``additions`` random residues through the piecewise adder. The modulus
    defaults to 2^n - 1, the worst case for coset headroom.
    """
    if trials < 100:
        raise ValueError("need at least 100 trials")
    N = (1 << n) - 1 if modulus is None else modulus
    if N.bit_length() != n or N < 2:
        raise ValueError(f"modulus must have exactly {n} bits")
    rng = np.random.default_rng(seed)
    layout = coset_layout(n, params)
    k = rng.integers(0, N, size=trials, dtype=np.int64)
    j = rng.integers(0, 1 << params.c_pad, size=trials, dtype=np.int64)
    addends = rng.integers(0, N, size=(additions, trials), dtype=np.int64)
    decoded = run_runway_additions(k + j * N, addends, layout, rng) % N
    expected = (k + addends.sum(axis=0)) % N
    return float(np.mean(decoded != expected))
