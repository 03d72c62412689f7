"""Failure probabilities of one run and their combination into a retry risk."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .abstract_cost import CostParams, effective_separation, lookup_addition_count, padding_length
from .factories import FactoryModel

POSTPROCESSING_FAILURE = 0.01
REFERENCE_GATE_ERROR = 1e-3


@dataclass(frozen=True)
class ErrorBudget:
    deviation: float
    approximation_error: float
    topological_error: float
    distillation_error: float
    postprocessing_failure: float
    retry_risk: float

    def dominant_component(self) -> str:
        parts = {
            "approximation": self.approximation_error,
            "topological": self.topological_error,
            "distillation": self.distillation_error,
            "post-processing": self.postprocessing_failure,
        }
        return max(parts, key=parts.get)


class ScaledVolume(NamedTuple):
    volume: float
    in_validity_range: bool


def deviation_per_addition(n: int, c_sep: int, c_pad: int) -> float:
    if c_pad < 0 or c_sep < 1:
        raise ValueError("need c_pad >= 0 and c_sep >= 1")
    return n / (c_sep * 2.0**c_pad)


def total_deviation(n: int, n_e: int, params: CostParams) -> float:
    c_pad = padding_length(n, n_e, params.delta_off)
    additions = lookup_addition_count(n, n_e, params, c_pad)
    c_sep = effective_separation(n, params.c_sep)
    return min(1.0, additions * deviation_per_addition(n, c_sep, c_pad))


def approximation_error(deviation: float) -> float:
    """Trace distance bound 2 sqrt(deviation), capped at 1."""
    if not 0 <= deviation <= 1:
        raise ValueError(f"deviation must be a probability, got {deviation}")
    return min(1.0, 2 * math.sqrt(deviation))


def logical_error_per_qubit_cycle(d: int, gate_error: float = REFERENCE_GATE_ERROR) -> float:
    """10^-ceil(d/2 + 1) at a 0.1% gate error.

    Other gate errors keep the same form with a suppression factor of
    (1% / gate_error) per +2 in distance.
    """
    if d < 3 or d % 2 == 0:
        raise ValueError(f"code distance must be odd and >= 3, got {d}")
    base = 10.0 ** -math.ceil(d / 2 + 1)
    if gate_error == REFERENCE_GATE_ERROR:
        return base
    return base * (gate_error / REFERENCE_GATE_ERROR) ** ((d + 1) / 2)


def topological_error(logical_qubits: float, nondistill_fraction: float, cycles: float, d2: int,
                      gate_error: float = REFERENCE_GATE_ERROR) -> float:
    if not 0 <= nondistill_fraction <= 1:
        raise ValueError("nondistill_fraction must lie in [0, 1]")
    p = logical_error_per_qubit_cycle(d2, gate_error)
    return min(1.0, p * logical_qubits * nondistill_fraction * cycles)


def distillation_error(magic_state_count: float, factory: FactoryModel,
                       gate_error: float = REFERENCE_GATE_ERROR) -> float:
    """Probability that any of the consumed magic states is faulty.

    The factory table is calibrated at a 0.1% gate error; other rates rescale
    it like a distance-d2 logical qubit (low fidelity).
    """
    if magic_state_count < 0:
        raise ValueError("magic_state_count must be non-negative")
    per_state = factory.error_per_state
    if gate_error != REFERENCE_GATE_ERROR:
        per_state *= (gate_error / REFERENCE_GATE_ERROR) ** ((factory.d2 + 1) / 2)
    return min(1.0, magic_state_count * per_state)


def retry_risk(topological: float, distillation: float, approximation: float,
               postprocessing: float = POSTPROCESSING_FAILURE) -> float:
    """Probability that a run must be repeated, assuming independent failures."""
    parts = (topological, distillation, approximation, postprocessing)
    if any(not 0 <= p <= 1 for p in parts):
        raise ValueError(f"components must be probabilities, got {parts}")
    survive = 1.0
    for p in parts:
        survive *= 1 - p
    return 1 - survive


def volume_scaling_rule(v_ref: float, p: float) -> ScaledVolume:
    """Translate an expected volume at 0.1% gate error to gate error ``p``.

    The rule is only meant for 0.001% <= p <= 0.3%; outside that range the
    value is still returned but flagged.
    """
    if not 0 < p < 0.01:
        raise ValueError(f"gate error must lie strictly between 0 and 1%, got {p}")
    volume = v_ref / (-math.log10(p) - 2) ** 3
    return ScaledVolume(volume, 1e-5 <= p <= 3e-3)


def error_budget(deviation: float, topological: float, distillation: float,
                 postprocessing: float = POSTPROCESSING_FAILURE) -> ErrorBudget:
    approx = approximation_error(deviation)
    return ErrorBudget(
        deviation=deviation,
        approximation_error=approx,
        topological_error=topological,
        distillation_error=distillation,
        postprocessing_failure=postprocessing,
        retry_risk=retry_risk(topological, distillation, approx, postprocessing),
    )
