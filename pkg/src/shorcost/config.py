"""Physical hardware assumptions shared by the estimator and the CLI."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, replace


@dataclass(frozen=True)
class PhysicalAssumptions:
    """Hardware assumptions.

    gate_error: characteristic physical gate error rate.
    cycle_time: surface code cycle time in seconds.
    reaction_time: measure-decode-feedforward latency in seconds.
    misc_time: per-lookup-addition overhead (lookup uncomputation, row
        rearrangement) in seconds.
    """

    gate_error: float = 1e-3
    cycle_time: float = 1e-6
    reaction_time: float = 10e-6
    misc_time: float = 1e-3

    def __post_init__(self):
        if not 0 < self.gate_error < 0.01:
            raise ValueError(f"gate_error must lie below the 1% threshold, got {self.gate_error}")
        for name in ("cycle_time", "reaction_time", "misc_time"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    def to_dict(self) -> dict:
        return asdict(self)


DEFAULT_ASSUMPTIONS = PhysicalAssumptions()


def load_assumptions(path: str) -> PhysicalAssumptions:
    """Read assumptions from a JSON object.

    Recognised keys are ``gate_error``, ``cycle_us``, ``reaction_us`` and
    ``misc_ms``; missing keys keep their defaults.
    """
    with open(path) as f:
        raw = json.load(f)
    known = {"gate_error", "cycle_us", "reaction_us", "misc_ms"}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown keys in {path}: {sorted(unknown)}")
    updates = {}
    if "gate_error" in raw:
        updates["gate_error"] = float(raw["gate_error"])
    if "cycle_us" in raw:
        updates["cycle_time"] = float(raw["cycle_us"]) * 1e-6
    if "reaction_us" in raw:
        updates["reaction_time"] = float(raw["reaction_us"]) * 1e-6
    if "misc_ms" in raw:
        updates["misc_time"] = float(raw["misc_ms"]) * 1e-3
    return replace(DEFAULT_ASSUMPTIONS, **updates)
