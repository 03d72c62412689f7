"""Windowed modular exponentiation over coset-encoded registers.

Two registers x and y hold residues in coset form. For each exponent window
with value e_w, and K = g^(e_w * 2^(i * c_exp)):

    y += x * K      (mod N)
    x += y * (-K^-1) (mod N)

which leaves x = 0 and y = x * K; the registers then swap roles (a relabeling,
no gates). Each multiply-add is a sequence of lookup additions whose address
is the exponent window qubits next to a c_mul-bit window of the factor
register. Exponent bits come in as classical inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .arithmetic import append_lookup, append_piecewise_addition
from .circuit import Circuit, simulate_batch
from .coset import RunwayLayout, coset_decode

MAX_WIDTH = 12


@dataclass(frozen=True)
class SimParams:
    """Construction parameters at desk scale.

    ``c_sep`` of None means no runways.
    """

    c_exp: int = 2
    c_mul: int = 2
    c_pad: int = 8
    c_sep: Optional[int] = None

    def __post_init__(self):
        if self.c_exp < 1 or self.c_mul < 1:
            raise ValueError("window sizes must be at least 1")
        if self.c_pad < 0:
            raise ValueError("c_pad must be non-negative")
        if self.c_sep is not None and self.c_sep < 1:
            raise ValueError("c_sep must be positive")


@dataclass
class ModexpCircuit:
    circuit: Circuit
    g: int
    N: int
    n: int
    n_e: int
    params: SimParams
    lookup_additions: int
    result_register: str

    @property
    def width(self) -> int:
        return self.n + self.params.c_pad

    def run(self, exponents, x_offsets=None, y_offsets=None) -> np.ndarray:
        """Decoded residues, one per lane.

        Lane i starts with x = 1 + x_offsets[i] * N and y = y_offsets[i] * N.
        """
        exponents = np.asarray(exponents, dtype=np.int64)
        lanes = exponents.size
        jx = np.zeros(lanes, dtype=np.int64) if x_offsets is None else np.asarray(x_offsets, dtype=np.int64)
        jy = np.zeros(lanes, dtype=np.int64) if y_offsets is None else np.asarray(y_offsets, dtype=np.int64)
        limit = 1 << self.params.c_pad
        if np.any(jx < 0) or np.any(jx >= limit) or np.any(jy < 0) or np.any(jy >= limit):
            raise ValueError(f"coset offsets must lie in [0, {limit})")
        out = simulate_batch(self.circuit, {"x0": 1 + jx * self.N, "x1": jy * self.N},
                             {"e": exponents}, lanes=lanes)
        return coset_decode(out[self.result_register], self.N)

    def deviation_bound(self) -> float:
        return min(1.0, self.lookup_additions / 2.0**self.params.c_pad)


def _mul_add(circ: Circuit, exp: Sequence[int], factor: Sequence[int], target: Sequence[int],
             value: Sequence[int], work, carry: int, inc, layout: RunwayLayout,
             multipliers: Sequence[int], N: int, c_mul: int) -> int:
    """target += factor * multipliers[e_w] (mod N); returns lookup additions used."""
    c_exp = len(exp)
    count = 0
    for j in range(0, len(factor), c_mul):
        window = factor[j:j + c_mul]
        weight = pow(2, j, N)
        table = [0] * (1 << (c_exp + len(window)))
        for f in range(1 << len(window)):
            for e_w, k in enumerate(multipliers):
                table[e_w | f << c_exp] = f * weight * k % N
        address = list(exp) + list(window)
        append_lookup(circ, table, address, value, work)
        append_piecewise_addition(circ, value, target, [], layout, carry, inc)
        append_lookup(circ, table, address, value, work, measured=True)
        count += 1
    return count


def build_windowed_modexp(g: int, N: int, n: int, params: SimParams, n_e: int = 8) -> ModexpCircuit:
    """Circuit taking x = 1 to g^e (mod N) for the classical exponent in ``e``.

    ``n`` is the register width for residues, at least N's bit length and at
    most 12. Runways are not used here (``params.c_sep`` must be None or at
    least ``n``).
    """
    if N < 3 or N % 2 == 0:
        raise ValueError("modulus must be odd and at least 3")
    if math.gcd(g, N) != 1:
        raise ValueError(f"g={g} is not invertible modulo {N}")
    if not N.bit_length() <= n <= MAX_WIDTH:
        raise ValueError(f"register width must lie in [{N.bit_length()}, {MAX_WIDTH}]")
    if params.c_sep is not None and params.c_sep < n:
        raise ValueError("runways are not supported in the modexp circuit")
    if n_e < 1:
        raise ValueError("need at least one exponent bit")
    c_exp, c_mul, c_pad = params.c_exp, params.c_mul, params.c_pad
    width = n + c_pad
    layout = RunwayLayout(width, width, 0, data_bits=n)

    circ = Circuit()
    regs = {"x0": circ.add_register("x0", width), "x1": circ.add_register("x1", width)}
    exp = circ.add_register("exp", c_exp)
    value = circ.add_register("lookup", n)
    work = circ.add_register("work", c_exp + c_mul - 1)
    carry = circ.add_register("carry", 1)[0]
    inc = circ.add_register("inc", max(0, layout.max_extension - 1))
    ebits = circ.add_cregister("e", n_e)

    acc, tmp = "x0", "x1"
    additions = 0
    g = g % N
    for i in range(math.ceil(n_e / c_exp)):
        bits = ebits[i * c_exp:(i + 1) * c_exp]
        for q, b in zip(exp, bits):
            circ.classical_x(q, [b])
        base = pow(g, 1 << (i * c_exp), N)
        forward = [pow(base, e_w, N) for e_w in range(1 << c_exp)]
        backward = [(-pow(k, -1, N)) % N for k in forward]
        additions += _mul_add(circ, exp, regs[acc], regs[tmp], value, work, carry, inc, layout,
                              forward, N, c_mul)
        additions += _mul_add(circ, exp, regs[tmp], regs[acc], value, work, carry, inc, layout,
                              backward, N, c_mul)
        for q, b in zip(exp, bits):
            circ.classical_x(q, [b])
        acc, tmp = tmp, acc
    return ModexpCircuit(circ, g, N, n, n_e, params, additions, acc)


def modexp(g: int, e: int, N: int, params: SimParams = SimParams(), n_e: Optional[int] = None) -> int:
    """Evaluate g^e mod N on the simulated circuit with zero coset offsets."""
    n_e = max(1, e.bit_length()) if n_e is None else n_e
    mc = build_windowed_modexp(g, N, N.bit_length(), params, n_e)
    return int(mc.run([e])[0])
