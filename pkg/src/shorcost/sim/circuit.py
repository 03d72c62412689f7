"""Classical reversible circuits and a vectorized permutation simulator.

A circuit acts on qubits that are always in a computational basis state, so
simulation is bit manipulation. The simulator runs many basis states
("lanes") at once: the state is a boolean array of shape (qubits, lanes).

Classical bits are read-only inputs (exponent bits supplied by a
semi-classical Fourier transform, say). Any gate may carry a classical
condition, which is the AND of the listed classical bits.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np


class GateKind(str, enum.Enum):
    NOT = "NOT"
    CNOT = "CNOT"
    TOFFOLI = "TOFFOLI"
    CLASSICAL_CTRL = "CLASSICAL_CTRL"


_ARITY = {GateKind.NOT: 0, GateKind.CNOT: 1, GateKind.TOFFOLI: 2, GateKind.CLASSICAL_CTRL: 0}


@dataclass(frozen=True)
class Gate:
    """One reversible gate.

    ``measured`` marks a Toffoli that stands in for a measurement-based
    uncomputation of a logical AND. It acts like a Toffoli here but is not
    counted as one.
    """

    kind: GateKind
    target: int
    controls: tuple[int, ...] = ()
    condition: tuple[int, ...] = ()
    measured: bool = False

    def __post_init__(self):
        if len(self.controls) != _ARITY[self.kind]:
            raise ValueError(f"{self.kind.value} takes {_ARITY[self.kind]} controls, got {self.controls}")
        if self.target in self.controls or len(set(self.controls)) != len(self.controls):
            raise ValueError(f"gate qubits must be distinct: target {self.target}, controls {self.controls}")
        if self.kind is GateKind.CLASSICAL_CTRL and not self.condition:
            raise ValueError("CLASSICAL_CTRL needs at least one classical condition bit")
        if self.measured and self.kind is not GateKind.TOFFOLI:
            raise ValueError("only Toffoli gates can be marked as measured")

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.controls + (self.target,)

    def to_text(self) -> str:
        parts = [self.kind.value, *map(str, self.controls), "->", str(self.target)]
        if self.condition:
            parts += ["if", "&".join(f"c{b}" for b in self.condition)]
        if self.measured:
            parts.append("measured")
        return " ".join(parts)

    @classmethod
    def from_text(cls, line: str) -> "Gate":
        tokens = line.split()
        kind = GateKind(tokens[0])
        arrow = tokens.index("->")
        controls = tuple(int(t) for t in tokens[1:arrow])
        target = int(tokens[arrow + 1])
        rest = tokens[arrow + 2:]
        condition: tuple[int, ...] = ()
        measured = False
        while rest:
            tok = rest.pop(0)
            if tok == "if":
                condition = tuple(int(b[1:]) for b in rest.pop(0).split("&"))
            elif tok == "measured":
                measured = True
            else:
                raise ValueError(f"unexpected token {tok!r} in gate line {line!r}")
        return cls(kind, target, controls, condition, measured)


class Circuit:
    """Ordered gate list over named quantum and classical registers."""

    def __init__(self):
        self.gates: list[Gate] = []
        self.registers: dict[str, range] = {}
        self.cregisters: dict[str, range] = {}
        self.num_qubits = 0
        self.num_cbits = 0

    def add_register(self, name: str, width: int) -> list[int]:
        if name in self.registers:
            raise ValueError(f"duplicate register {name!r}")
        if width < 0:
            raise ValueError("register width must be non-negative")
        self.registers[name] = range(self.num_qubits, self.num_qubits + width)
        self.num_qubits += width
        return list(self.registers[name])

    def add_cregister(self, name: str, width: int) -> list[int]:
        if name in self.cregisters:
            raise ValueError(f"duplicate classical register {name!r}")
        self.cregisters[name] = range(self.num_cbits, self.num_cbits + width)
        self.num_cbits += width
        return list(self.cregisters[name])

    def append(self, gate: Gate) -> None:
        for q in gate.qubits:
            if not 0 <= q < self.num_qubits:
                raise ValueError(f"qubit index {q} out of range for {self.num_qubits} qubits")
        for b in gate.condition:
            if not 0 <= b < self.num_cbits:
                raise ValueError(f"classical bit {b} out of range for {self.num_cbits} bits")
        self.gates.append(gate)

    def x(self, target: int, condition: Sequence[int] = ()) -> None:
        self.append(Gate(GateKind.NOT, target, condition=tuple(condition)))

    def cx(self, control: int, target: int) -> None:
        self.append(Gate(GateKind.CNOT, target, (control,)))

    def ccx(self, c1: int, c2: int, target: int, measured: bool = False) -> None:
        self.append(Gate(GateKind.TOFFOLI, target, (c1, c2), measured=measured))

    def classical_x(self, target: int, bits: Sequence[int]) -> None:
        self.append(Gate(GateKind.CLASSICAL_CTRL, target, condition=tuple(bits)))

    def inverse(self) -> "Circuit":
        """Same registers, gates reversed (every gate here is self-inverse)."""
        inv = Circuit()
        inv.registers = dict(self.registers)
        inv.cregisters = dict(self.cregisters)
        inv.num_qubits, inv.num_cbits = self.num_qubits, self.num_cbits
        inv.gates = list(reversed(self.gates))
        return inv

    def to_text(self) -> str:
        lines = [f"qubits {self.num_qubits}", f"cbits {self.num_cbits}"]
        for name, r in self.registers.items():
            lines.append(f"qreg {name} {r.start} {len(r)}")
        for name, r in self.cregisters.items():
            lines.append(f"creg {name} {r.start} {len(r)}")
        lines += [g.to_text() for g in self.gates]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Circuit":
        circ = cls()
        for line in text.splitlines():
            if not line.strip():
                continue
            head, *rest = line.split()
            if head == "qubits":
                circ.num_qubits = int(rest[0])
            elif head == "cbits":
                circ.num_cbits = int(rest[0])
            elif head in ("qreg", "creg"):
                name, start, width = rest[0], int(rest[1]), int(rest[2])
                regs = circ.registers if head == "qreg" else circ.cregisters
                regs[name] = range(start, start + width)
            else:
                circ.append(Gate.from_text(line))
        return circ

    def __len__(self):
        return len(self.gates)


@dataclass
class BasisState:
    """Register values (little-endian integers) plus classical inputs."""

    registers: dict[str, int] = field(default_factory=dict)
    classical: dict[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class ResourceCount:
    toffolis: int
    measurement_depth: int


def _check_width(name: str, width: int, values: np.ndarray) -> None:
    if width > 62:
        raise ValueError(f"register {name!r} is too wide ({width} bits) for the batch simulator")
    if np.any(values < 0) or np.any(values >> width != 0):
        raise ValueError(f"value out of range for {width}-bit register {name!r}")


def pack(layout: Mapping[str, range], total: int, values: Mapping[str, Iterable[int]], lanes: int) -> np.ndarray:
    """Bit array of shape (total, lanes) from per-register integer arrays."""
    bits = np.zeros((total, lanes), dtype=bool)
    for name, vals in values.items():
        if name not in layout:
            raise ValueError(f"unknown register {name!r}")
        r = layout[name]
        vals = np.broadcast_to(np.asarray(vals, dtype=np.int64), (lanes,))
        _check_width(name, len(r), vals)
        for i, q in enumerate(r):
            bits[q] = (vals >> i) & 1
    return bits


def unpack(layout: Mapping[str, range], bits: np.ndarray) -> dict[str, np.ndarray]:
    out = {}
    for name, r in layout.items():
        value = np.zeros(bits.shape[1], dtype=np.int64)
        for i, q in enumerate(r):
            value |= bits[q].astype(np.int64) << i
        out[name] = value
    return out


def simulate_bits(circuit: Circuit, qubits: np.ndarray, cbits: np.ndarray | None = None) -> np.ndarray:
    """Apply the circuit to a (num_qubits, lanes) boolean array; returns a new array."""
    if qubits.shape[0] != circuit.num_qubits:
        raise ValueError(f"state has {qubits.shape[0]} qubits, circuit needs {circuit.num_qubits}")
    lanes = qubits.shape[1]
    if cbits is None:
        cbits = np.zeros((circuit.num_cbits, lanes), dtype=bool)
    if cbits.shape[0] != circuit.num_cbits:
        raise ValueError(f"got {cbits.shape[0]} classical bits, circuit needs {circuit.num_cbits}")
    q = qubits.copy()
    for g in circuit.gates:
        if g.kind is GateKind.NOT or g.kind is GateKind.CLASSICAL_CTRL:
            flip = np.ones(lanes, dtype=bool) if not g.condition else None
        elif g.kind is GateKind.CNOT:
            flip = q[g.controls[0]]
        else:
            flip = q[g.controls[0]] & q[g.controls[1]]
        if g.condition:
            cond = cbits[g.condition[0]]
            for b in g.condition[1:]:
                cond = cond & cbits[b]
            flip = cond if flip is None else flip & cond
        q[g.target] ^= flip
    return q


def simulate_batch(circuit: Circuit, registers: Mapping[str, Iterable[int]],
                   classical: Mapping[str, Iterable[int]] | None = None,
                   lanes: int | None = None) -> dict[str, np.ndarray]:
    """Run many basis states at once; unspecified registers start at zero."""
    classical = classical or {}
    if lanes is None:
        sizes = [np.size(v) for v in list(registers.values()) + list(classical.values())]
        lanes = max(sizes, default=1)
    q = pack(circuit.registers, circuit.num_qubits, registers, lanes)
    c = pack(circuit.cregisters, circuit.num_cbits, classical, lanes)
    return unpack(circuit.registers, simulate_bits(circuit, q, c))


def simulate(circuit: Circuit, state: BasisState) -> BasisState:
    out = simulate_batch(circuit, {k: [v] for k, v in state.registers.items()},
                         {k: [v] for k, v in state.classical.items()}, lanes=1)
    return BasisState({k: int(v[0]) for k, v in out.items()}, dict(state.classical))


def count_resources(circuit: Circuit) -> ResourceCount:
    """Toffoli tally and measurement depth.

    Depth convention: each counted Toffoli is one reaction-limited step
    (teleported through a magic state), so the depth is the longest chain of
    counted Toffolis linked by shared qubits. Clifford gates and measured
    uncomputations propagate dependencies but add no depth.
    """
    ready = [0] * circuit.num_qubits
    toffolis = 0
    depth = 0
    for g in circuit.gates:
        t = max(ready[q] for q in g.qubits)
        if g.kind is GateKind.TOFFOLI and not g.measured:
            toffolis += 1
            t += 1
        for q in g.qubits:
            ready[q] = t
        depth = max(depth, t)
    return ResourceCount(toffolis, depth)
