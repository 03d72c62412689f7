"""Coset representation of residues and oblivious carry runways.

A residue k mod N is stored as k + jN for a uniformly random j < 2^c_pad.
Plain (non-modular) additions then act on the whole population at once and
only go wrong for the few offsets that overflow the register.

A runway register splits a ``width``-bit register into pieces of ``c_sep``
bits. Every piece except the top one is followed by a ``c_pad``-bit runway
that catches its carries, so the pieces can be added independently. The
represented value is

    (main + sum_i runway_i * 2^((i+1) * c_sep)) mod 2^width.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .arithmetic import append_cuccaro
from .circuit import Circuit


@dataclass(frozen=True)
class CosetRegister:
    n: int
    c_pad: int
    N: int
    population: tuple[int, ...]

    @property
    def width(self) -> int:
        return self.n + self.c_pad


def coset_encode(k: int, N: int, c_pad: int) -> CosetRegister:
    """Uniform population {jN + k : 0 <= j < 2^c_pad}."""
    if N < 2:
        raise ValueError("modulus must be at least 2")
    if not 0 <= k < N:
        raise ValueError(f"residue {k} is not in [0, {N})")
    if c_pad < 0:
        raise ValueError("c_pad must be non-negative")
    return CosetRegister(N.bit_length(), c_pad, N, tuple(j * N + k for j in range(1 << c_pad)))


def coset_sample(k, N: int, c_pad: int, rng: np.random.Generator, size: Optional[int] = None):
    """Random members of the coset encoding(s) of k."""
    j = rng.integers(0, 1 << c_pad, size=size)
    return np.asarray(k, dtype=np.int64) + j * N


def coset_decode(value, N: int):
    return value % N


@dataclass(frozen=True)
class RunwayLayout:
    """Piece and runway positions of a ``width``-bit register.

    ``data_bits`` (default ``width``) sets the number of pieces; any bits above
    it (coset padding, say) belong to the top piece.
    """

    width: int
    c_sep: int
    c_pad: int
    data_bits: Optional[int] = None

    def __post_init__(self):
        if self.c_sep < 1 or self.c_pad < 0 or self.width < 0:
            raise ValueError("need c_sep >= 1, c_pad >= 0 and width >= 0")
        if self.data_bits is None:
            object.__setattr__(self, "data_bits", self.width)
        if not 0 <= self.data_bits <= self.width:
            raise ValueError("data_bits must lie in [0, width]")

    @property
    def pieces(self) -> int:
        return max(1, math.ceil(self.data_bits / self.c_sep))

    @property
    def runway_count(self) -> int:
        return self.pieces - 1

    @property
    def total_bits(self) -> int:
        return self.width + self.runway_count * self.c_pad

    def piece_range(self, i: int) -> tuple[int, int]:
        if not 0 <= i < self.pieces:
            raise IndexError(i)
        lo = i * self.c_sep
        return lo, (self.width if i == self.pieces - 1 else lo + self.c_sep)

    def runway_shift(self, i: int) -> int:
        return (i + 1) * self.c_sep

    @property
    def max_extension(self) -> int:
        """Longest carry-absorbing extension seen by a data-width addition."""
        best = 0
        for i in range(self.pieces):
            lo, hi = self.piece_range(i)
            used = max(0, min(hi, self.data_bits) - lo)
            runway = self.c_pad if i < self.runway_count else 0
            best = max(best, hi - lo - used + runway)
        return best

    @property
    def folded_bits(self) -> int:
        """Bits a multiply-add iterates over once each runway is folded to one qubit."""
        return self.width + self.runway_count


@dataclass(frozen=True)
class RunwayValue:
    """Measured (or simulated) contents of a runway register."""

    layout: RunwayLayout
    main: int
    runways: tuple[int, ...]

    @classmethod
    def from_bits(cls, layout: RunwayLayout, bits: Sequence[int]) -> "RunwayValue":
        """Parse main bits then runway bits, each little-endian."""
        if len(bits) != layout.total_bits or any(b not in (0, 1) for b in bits):
            raise ValueError(f"malformed measurement record: expected {layout.total_bits} bits")
        main = sum(b << i for i, b in enumerate(bits[:layout.width]))
        runways = []
        for i in range(layout.runway_count):
            chunk = bits[layout.width + i * layout.c_pad:layout.width + (i + 1) * layout.c_pad]
            runways.append(sum(b << j for j, b in enumerate(chunk)))
        return cls(layout, main, tuple(runways))


def insert_runways(value: int, layout: RunwayLayout, rng: Optional[np.random.Generator] = None,
                   runway_values: Optional[Sequence[int]] = None) -> RunwayValue:
    """Spread ``value`` over pieces with freshly randomized runways.

    Each runway starts uniformly random and is subtracted from the register
    above it, which leaves the represented value unchanged.
    """
    if not 0 <= value < 1 << layout.width:
        raise ValueError(f"value {value} does not fit in {layout.width} bits")
    if runway_values is None:
        rng = rng or np.random.default_rng()
        runway_values = [int(r) for r in rng.integers(0, 1 << layout.c_pad, size=layout.runway_count)]
    if len(runway_values) != layout.runway_count:
        raise ValueError(f"expected {layout.runway_count} runway values")
    main = value
    for i, r in enumerate(runway_values):
        main -= r << layout.runway_shift(i)
    return RunwayValue(layout, main % (1 << layout.width), tuple(runway_values))


def remove_runways_classically(measured: RunwayValue) -> int:
    layout = measured.layout
    if len(measured.runways) != layout.runway_count:
        raise ValueError("malformed measurement record: wrong number of runways")
    if not 0 <= measured.main < 1 << layout.width or any(not 0 <= r < 1 << layout.c_pad for r in measured.runways):
        raise ValueError("malformed measurement record: value out of range")
    total = measured.main
    for i, r in enumerate(measured.runways):
        total += r << layout.runway_shift(i)
    return total % (1 << layout.width)


def insert_runways_batch(values: np.ndarray, layout: RunwayLayout, rng: np.random.Generator):
    """Vectorized :func:`insert_runways`; returns (main, runways[count, lanes])."""
    runways = rng.integers(0, 1 << layout.c_pad, size=(layout.runway_count, len(values)), dtype=np.int64)
    main = values.astype(np.int64)
    for i in range(layout.runway_count):
        main = main - (runways[i] << layout.runway_shift(i))
    return main % (1 << layout.width), runways


def remove_runways_batch(main: np.ndarray, runways: np.ndarray, layout: RunwayLayout) -> np.ndarray:
    total = main.astype(np.int64)
    for i in range(layout.runway_count):
        total = total + (runways[i] << layout.runway_shift(i))
    return total % (1 << layout.width)


def _check_foldable(layout: RunwayLayout) -> None:
    for i in range(1, layout.pieces):
        lo, hi = layout.piece_range(i)
        if hi - lo < layout.c_pad:
            raise ValueError(f"piece {i} has {hi - lo} bits, fewer than the {layout.c_pad}-bit runway below it")


def append_fold(circ: Circuit, main: Sequence[int], runways: Sequence[Sequence[int]],
                folded: Sequence[int], carry_in: int, layout: RunwayLayout) -> None:
    """Add each runway into the bottom of the next piece, its carry into one qubit.

    Afterwards the main register plus ``folded[i]`` (weight
    2^((i+1)*c_sep + c_pad)) spell out the represented value, so a
    multiply-add can iterate over them. The runways themselves are untouched.
    """
    _check_foldable(layout)
    if len(folded) < layout.runway_count:
        raise ValueError("need one fold qubit per runway")
    for i in range(layout.runway_count):
        lo = layout.runway_shift(i)
        dest = main[lo:lo + layout.c_pad]
        f = folded[i]
        append_cuccaro(circ, runways[i], dest, carry_in, lambda c, f=f: circ.cx(c, f))


def append_unfold(circ: Circuit, main: Sequence[int], runways: Sequence[Sequence[int]],
                  folded: Sequence[int], carry_in: int, layout: RunwayLayout) -> None:
    start = len(circ.gates)
    append_fold(circ, main, runways, folded, carry_in, layout)
    gates = circ.gates[start:]
    del circ.gates[start:]
    circ.gates.extend(reversed(gates))


def build_runway_fold(layout: RunwayLayout, unfold_too: bool = False) -> Circuit:
    """Registers ``main``, ``runways``, ``folded``, ``carry``."""
    circ = Circuit()
    main = circ.add_register("main", layout.width)
    flat = circ.add_register("runways", layout.runway_count * layout.c_pad)
    folded = circ.add_register("folded", layout.runway_count)
    carry = circ.add_register("carry", 1)[0]
    runways = [flat[i * layout.c_pad:(i + 1) * layout.c_pad] for i in range(layout.runway_count)]
    append_fold(circ, main, runways, folded, carry, layout)
    if unfold_too:
        append_unfold(circ, main, runways, folded, carry, layout)
    return circ


def folded_value(layout: RunwayLayout, main: int, folded: Sequence[int]) -> int:
    """Represented value read from a folded register."""
    total = main
    for i, f in enumerate(folded):
        total += f << (layout.runway_shift(i) + layout.c_pad)
    return total % (1 << layout.width)
